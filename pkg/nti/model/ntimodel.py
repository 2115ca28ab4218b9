# -*- coding: utf-8 -*-
"""Trainable NTI models for sentence, sentence-pair and answer selection
tasks."""

import numpy as np

from nti.ad import functions as F
from nti.ad.tensor import backward
from nti.data.records import nli_label_index
from nti.model.encoder import EncoderParams, encode
from nti.model.heads import HeadParams, mlp_logits, nli_features, \
    sst_logits, qa_logit
from nti.model.matching import MatchParams, attend_tree, node_schedule, \
    node_by_node_attend, tree_match, full_tree_match
from nti.model.params import ParamStore
from nti.optimize.regularization import l2_penalty
from nti.tools.decorators import counter
from nti.tools.exceptions import ConfigError, ShapeError
from nti.tools.logs import get_logger
from nti.tree.topology import node_span_label

__docformat__ = 'restructuredtext'


class NTIModel(object):
    """Abstract NTI model.

    A model owns its parameters and fixed embeddings and evaluates the loss
    of single examples. Instances of the general class do not do anything
    interesting; they must be subclassed and specialized.
    """

    #: Model selection metric: ``'accuracy'`` or ``'map'``.
    metric = 'accuracy'

    def __init__(self, cfg, embeddings, name='Generic', **kwargs):
        """Initialize a model from a configuration and embeddings.

        :parameters:
            :cfg:        :class:`ModelConfig`
            :embeddings: :class:`EmbeddingTable` of width ``cfg.k_in``
            :name:       model name (default: 'Generic')

        :keywords:
            :logger_name: name of the logger (default: 'nti.model')
        """
        if embeddings.dim != cfg.k_in:
            raise ShapeError("embeddings of width %d for k_in=%d"
                             % (embeddings.dim, cfg.k_in))
        self.cfg = cfg
        self.embeddings = embeddings
        self.name = name
        self.params = ParamStore(seed=cfg.seed, dtype=cfg.np_dtype)
        self.logger = get_logger(kwargs.get('logger_name', 'nti.model'))
        self._build()
        self._setup_counters()
        self.logger.debug("%s: %d parameters in %d tensors", self.name,
                          self.params.size, len(self.params))

    def _setup_counters(self):
        for meth in ("obj", "grad"):
            setattr(self, meth, counter(getattr(self, meth)))

    def _build(self):
        raise NotImplementedError('This method must be subclassed.')

    @property
    def nobj(self):
        """Number of objective evaluations."""
        return self.obj.ncalls

    @property
    def ngrad(self):
        """Number of gradient evaluations."""
        return self.grad.ncalls

    def embed(self, tokens):
        """Embedding rows of `tokens` in the model precision."""
        return self.embeddings.lookup(tokens).astype(self.cfg.np_dtype)

    def loss(self, example, train=False, rng=None):
        """One-element loss tensor of a single example."""
        raise NotImplementedError('This method must be subclassed.')

    def predict(self, example):
        """Class distribution of `example` as a numpy array."""
        raise NotImplementedError('This method must be subclassed.')

    def target(self, example):
        """Gold class index of `example`."""
        raise NotImplementedError('This method must be subclassed.')

    def predict_label(self, example):
        """Arg-max class; ties go to the lowest class index."""
        return int(np.argmax(self.predict(example)))

    def batch_loss(self, batch, **kwargs):
        """Mean loss of `batch` plus the l2 term, as a one-element tensor.

        :keywords:
            :l2:    weight decay strength (default: 0)
            :train: training mode (default: `False`)
            :rng:   random generator for dropout masks
        """
        if not batch:
            raise ValueError("empty batch")
        train = kwargs.get('train', False)
        rng = kwargs.get('rng', None)
        terms = [self.loss(ex, train=train, rng=rng) for ex in batch]
        loss = F.scale(F.add_n(terms), 1.0 / len(terms))
        l2 = kwargs.get('l2', 0.0)
        if l2 > 0:
            loss = F.add(loss, l2_penalty(self.params, l2))
        return loss

    def obj(self, batch, **kwargs):
        """Mean loss of `batch` in evaluation mode."""
        return self.batch_loss(batch, train=False,
                               l2=kwargs.get('l2', 0.0)).item()

    def grad(self, batch, **kwargs):
        """Return the loss of `batch` and the gradient of every parameter.

        Keywords are those of :meth:`batch_loss`; the parameter gradient
        slots are reset first.
        """
        self.params.zero_grad()
        loss = self.batch_loss(batch, **kwargs)
        backward(loss, leaves=self.params.tensors())
        return loss.item(), self.params.grads()


class SentenceClassifier(NTIModel):
    """Single-tree classifier over the root representation.

    Used for sentiment (2 or 5 classes) and for the toy sentence tasks.
    """

    def __init__(self, cfg, embeddings, name='sentence', **kwargs):
        """Keywords are those of :class:`NTIModel` and

        :keywords:
            :sentiment: restrict the head to the 2 or 5 sentiment classes
                        (default: `False`)
        """
        self.sentiment = kwargs.get('sentiment', False)
        NTIModel.__init__(self, cfg, embeddings, name=name, **kwargs)

    def _build(self):
        cfg = self.cfg
        if cfg.is_matching or cfg.nonleaf_mode != 'slstm':
            raise ConfigError("a sentence classifier needs an S-LSTM encoder "
                              "without matching")
        self.encoder = EncoderParams(self.params, 'encoder', cfg)
        self.head = HeadParams(self.params, 'head', cfg.k, cfg.mlp_hidden,
                               cfg.n_classes)

    def encode_tokens(self, tokens, train=False, rng=None):
        """Return the :class:`EncodedTree` of `tokens`."""
        return encode(self.embed(tokens), self.cfg, self.encoder,
                      train=train, rng=rng)

    def represent(self, tokens):
        """Root vector of `tokens` as a numpy array."""
        return self.encode_tokens(tokens).root.h.numpy()

    def logits(self, example, train=False, rng=None):
        root = self.encode_tokens(example.tokens, train, rng).root.h
        opts = dict(dropout=self.cfg.output_dropout, train=train, rng=rng)
        if self.sentiment:
            return sst_logits(root, self.head, self.cfg.n_classes, **opts)
        return mlp_logits(root, self.head, **opts)

    def loss(self, example, train=False, rng=None):
        return F.cross_entropy(self.logits(example, train, rng),
                               self.target(example))

    def predict(self, example):
        return F.softmax(self.logits(example)).numpy()

    def target(self, example):
        return example.label


class PairClassifier(NTIModel):
    """Premise/hypothesis classifier of every inference variant.

    Encoder-only variants classify the pair features of the two roots;
    matching variants classify the matching vector.
    """

    def _build(self):
        cfg = self.cfg
        if cfg.nonleaf_mode != 'slstm':
            raise ConfigError("pair models use the S-LSTM non-leaf function")
        if cfg.n_classes != 3:
            raise ConfigError("pair models have 3 classes, not %d"
                              % cfg.n_classes)
        k = cfg.k
        self.premise_encoder = EncoderParams(self.params, 'encoder', cfg)
        if cfg.tie_encoder_weights:
            self.hypothesis_encoder = self.premise_encoder
        else:
            self.hypothesis_encoder = EncoderParams(self.params,
                                                    'encoder_h', cfg)
        self.match = None
        n_in = 4 * k
        if cfg.is_matching:
            self.match = MatchParams(self.params, 'match', cfg)
            n_in = 2 * k if cfg.attention_mode.startswith('full') else k
        self.head = HeadParams(self.params, 'head', n_in, cfg.mlp_hidden,
                               cfg.n_classes)

    @property
    def node_by_node(self):
        return self.cfg.attention_mode.startswith('node_by_node')

    def encode_pair(self, pair, train=False, rng=None):
        """Return the encoded premise and hypothesis trees.

        In node-by-node models with a leaf LSTM the hypothesis LSTM starts
        from the final premise LSTM state.
        """
        cfg = self.cfg
        premise = encode(self.embed(pair.premise), cfg, self.premise_encoder,
                         train=train, rng=rng)
        init = None
        if self.node_by_node and cfg.leaf_mode == 'lstm':
            init = premise.leaf_final
        hypothesis = encode(self.embed(pair.hypothesis), cfg,
                            self.hypothesis_encoder, init_state=init,
                            train=train, rng=rng)
        return premise, hypothesis

    def represent(self, tokens):
        """Root vector of `tokens` under the premise encoder."""
        return encode(self.embed(tokens), self.cfg,
                      self.premise_encoder).root.h.numpy()

    def features(self, pair, train=False, rng=None):
        """Input vector of the classifier."""
        premise, hypothesis = self.encode_pair(pair, train, rng)
        mode = self.cfg.attention_mode
        if mode == 'none':
            return nli_features(premise.root.h, hypothesis.root.h)
        if self.node_by_node:
            return node_by_node_attend(premise, hypothesis, self.match)
        if mode.startswith('full'):
            return full_tree_match(premise, hypothesis, self.match)
        return tree_match(premise, hypothesis, self.match)

    def logits(self, pair, train=False, rng=None):
        return mlp_logits(self.features(pair, train, rng), self.head,
                          dropout=self.cfg.output_dropout, train=train,
                          rng=rng)

    def loss(self, pair, train=False, rng=None):
        return F.cross_entropy(self.logits(pair, train, rng),
                               self.target(pair))

    def predict(self, pair):
        return F.softmax(self.logits(pair)).numpy()

    def target(self, pair):
        return nli_label_index(pair.label)

    def attention_map(self, pair):
        """Global attention weights of every hypothesis node over the premise.

        Return ``(row_labels, column_labels, weights)``: one row per
        hypothesis node in schedule order, one column per premise node in
        id order, and a ``[rows×columns]`` array whose rows sum to one.
        """
        if self.match is None or self.match.mode != 'global':
            raise ConfigError("attention maps need a global attention model, "
                              "not %r" % self.cfg.attention_mode)
        premise, hypothesis = self.encode_pair(pair)
        schedule = node_schedule(hypothesis)
        if self.node_by_node:
            _, weights = node_by_node_attend(premise, hypothesis, self.match,
                                             return_weights=True)
        else:
            weights = [attend_tree(premise, hypothesis.states[node].h,
                                   self.match)[1] for node in schedule]
        rows = [node_span_label(hypothesis.topology, node, pair.hypothesis)
                for node in schedule]
        cols = [node_span_label(premise.topology, node, pair.premise)
                for node in range(premise.topology.n_nodes)]
        return rows, cols, np.array([w.numpy() for w in weights])


class AnswerSelector(NTIModel):
    """Answer sentence scorer.

    The candidate answer is encoded with a leaf LSTM and S-LSTM composition.
    With the attentive non-leaf function the question tree is composed with
    the answer root as query; otherwise the question uses an S-LSTM encoder
    too.
    """

    metric = 'map'

    def _build(self):
        cfg = self.cfg
        if cfg.is_matching:
            raise ConfigError("answer selection does not use matching")
        answer_cfg = cfg.replace(nonleaf_mode='slstm')
        self.answer_cfg = answer_cfg
        self.answer_encoder = EncoderParams(self.params, 'answer',
                                            answer_cfg)
        if cfg.nonleaf_mode == 'slstm' and cfg.tie_encoder_weights:
            self.question_encoder = self.answer_encoder
        else:
            self.question_encoder = EncoderParams(self.params, 'question',
                                                  cfg)
        self.head = HeadParams(self.params, 'head', 4 * cfg.k,
                               cfg.mlp_hidden, 1)

    def represent(self, tokens):
        """Root vector of `tokens` under the answer encoder."""
        return encode(self.embed(tokens), self.answer_cfg,
                      self.answer_encoder).root.h.numpy()

    def logit(self, pair, train=False, rng=None):
        answer = encode(self.embed(pair.answer), self.answer_cfg,
                        self.answer_encoder, train=train, rng=rng)
        question = encode(self.embed(pair.question), self.cfg,
                          self.question_encoder, q_external=answer.root.h,
                          train=train, rng=rng)
        return qa_logit(question.root.h, answer.root.h, self.head,
                        dropout=self.cfg.output_dropout, train=train, rng=rng)

    def loss(self, pair, train=False, rng=None):
        return F.binary_cross_entropy(self.logit(pair, train, rng),
                                      pair.relevance)

    def score(self, pair):
        """Probability that the candidate answers the question."""
        return F.sigmoid(self.logit(pair)).item()

    def predict(self, pair):
        p = self.score(pair)
        return np.array([1.0 - p, p])

    def target(self, pair):
        return pair.relevance


def model_class(task):
    """Model class for the task name `task`."""
    if task in ('snli', 'synthetic-pairs'):
        return PairClassifier
    if task == 'wikiqa':
        return AnswerSelector
    return SentenceClassifier


def build_model(task, cfg, embeddings, **kwargs):
    """Instantiate the model of `task`."""
    cls = model_class(task)
    if cls is SentenceClassifier:
        kwargs.setdefault('sentiment', task.startswith('sst'))
    return cls(cfg, embeddings, name=task, **kwargs)
