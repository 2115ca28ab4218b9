# -*- coding: utf-8 -*-
"""Mini-batch training of NTI models with Adam."""

import io
from collections import OrderedDict, namedtuple

import numpy as np

from nti.data.readers import group_by_question
from nti.model.checkpoint import save_checkpoint
from nti.model.ntimodel import build_model
from nti.optimize.adam import Adam
from nti.optimize.metrics import evaluate_accuracy, evaluate_map_mrr
from nti.tools.exceptions import ConfigError, NonFiniteGradientError, \
    UserExitRequest
from nti.tools.logs import get_logger
from nti.tools.timing import cputime

__docformat__ = 'restructuredtext'

Dataset = namedtuple('Dataset', ['task', 'train', 'dev', 'embeddings'])
Dataset.__doc__ = """Task name, training and development examples and the
fixed embedding table of a run. `dev` may be empty."""


class TrainConfig(object):
    """Validated training hyper-parameters."""

    fields = ('batch_size', 'learning_rate', 'l2', 'epochs', 'input_dropout',
              'output_dropout', 'seed')

    def __init__(self, **kwargs):
        """Build a configuration from keywords.

        :keywords:
            :batch_size:    examples per Adam step (default: 32)
            :learning_rate:  constant Adam learning rate (default: 1.0e-3)
            :l2:             weight decay strength (default: 0)
            :epochs:         passes over the training set (default: 10)
            :input_dropout:  dropout rate on leaf inputs (default: 0)
            :output_dropout: dropout rate on classifier input (default: 0)
            :seed:           shuffling and dropout seed (default: 0)
        """
        unknown = set(kwargs) - set(self.fields)
        if unknown:
            raise ConfigError("unknown training fields: %s"
                              % ", ".join(sorted(unknown)))
        self.batch_size = int(kwargs.get('batch_size', 32))
        self.learning_rate = float(kwargs.get('learning_rate', 1.0e-3))
        self.l2 = float(kwargs.get('l2', 0.0))
        self.epochs = int(kwargs.get('epochs', 10))
        self.input_dropout = float(kwargs.get('input_dropout', 0.0))
        self.output_dropout = float(kwargs.get('output_dropout', 0.0))
        self.seed = int(kwargs.get('seed', 0))
        self.validate()

    def validate(self):
        if self.batch_size < 1:
            raise ConfigError("batch_size must be at least 1")
        if self.learning_rate < 0 or self.l2 < 0:
            raise ConfigError("learning_rate and l2 must be nonnegative")
        if self.epochs < 0:
            raise ConfigError("epochs must be nonnegative")
        for name in ('input_dropout', 'output_dropout'):
            rate = getattr(self, name)
            if not 0.0 <= rate < 1.0:
                raise ConfigError("%s must lie in [0, 1), got %r"
                                  % (name, rate))

    def as_dict(self):
        return dict((f, getattr(self, f)) for f in self.fields)

    def __repr__(self):
        return "TrainConfig(%s)" % ", ".join(
            "%s=%r" % (f, getattr(self, f)) for f in self.fields)


def evaluate(model, examples):
    """Metrics of `model` on `examples`, selection metric first."""
    if model.metric == 'map':
        m, r = evaluate_map_mrr(model, group_by_question(examples))
        return OrderedDict([('map', m), ('mrr', r)])
    return OrderedDict([('accuracy', evaluate_accuracy(model, examples))])


class Trainer(object):
    """Train a model with mini-batch Adam and keep the best checkpoint."""

    def __init__(self, model, train_set, dev_set=(), **kwargs):
        """Instantiate a trainer for `model`.

        :parameters:
            :model:     an :class:`NTIModel`
            :train_set: non-empty list of training examples
            :dev_set:   development examples used for model selection; the
                        training metric is used when empty

        :keywords:
            :train_cfg:       :class:`TrainConfig` (default: defaults)
            :checkpoint_path: where the best parameters are written
            :metrics_path:    where the metrics log is written
            :meta:            configuration record stored in checkpoints
            :logger_name:     name of a logger (default: 'nti.train')
        """
        if not train_set:
            raise ValueError("the training set is empty")
        self.model = model
        self.train_set = list(train_set)
        self.dev_set = list(dev_set)
        self.cfg = kwargs.get('train_cfg', None) or TrainConfig()
        self.checkpoint_path = kwargs.get('checkpoint_path', None)
        self.metrics_path = kwargs.get('metrics_path', None)
        self.meta = kwargs.get('meta', {})
        self.logger = get_logger(kwargs.get('logger_name', 'nti.train'))

        self.optimizer = Adam(model.params, lr=self.cfg.learning_rate)
        self.shuffle_rng = np.random.RandomState(self.cfg.seed)
        self.dropout_rng = np.random.RandomState(self.cfg.seed + 1)

        self.epoch = 0
        self.status = ""
        self.history = []
        self.best_epoch = None
        self.best_score = None
        self.best_params = None
        self.tsolve = 0.0

        self.hdr = "%5s  %10s  %9s  %9s  %7s" % ("epoch", "loss", "train",
                                                 "dev", "time")
        self.fmt = "%5d  %10.4e  %9.4f  %9.4f  %7.2f"

    def batches(self):
        """Yield the mini-batches of one epoch in a seeded shuffled order."""
        order = self.shuffle_rng.permutation(len(self.train_set))
        size = self.cfg.batch_size
        for start in range(0, len(order), size):
            yield [self.train_set[i] for i in order[start:start + size]]

    def _record(self, epoch, split, metrics):
        for name, value in metrics.items():
            self.history.append((epoch, split, name, float(value)))
            if self._metrics_fp is not None:
                self._metrics_fp.write(u"%d\t%s\t%s\t%.17g\n"
                                       % (epoch, split, name, value))

    def _evaluate(self, epoch, loss=None):
        """Log the metrics of `epoch`; return the selection score."""
        if loss is not None:
            self._record(epoch, 'train', OrderedDict([('loss', loss)]))
        train = evaluate(self.model, self.train_set)
        self._record(epoch, 'train', train)
        score = list(train.values())[0]
        dev_score = np.nan
        if self.dev_set:
            dev = evaluate(self.model, self.dev_set)
            self._record(epoch, 'dev', dev)
            dev_score = score = list(dev.values())[0]
        self.logger.info(self.fmt, epoch, np.nan if loss is None else loss,
                         list(train.values())[0], dev_score,
                         cputime() - self._tstart)
        return score

    def _select(self, epoch, score):
        if self.best_score is not None and score <= self.best_score:
            return
        self.best_epoch = epoch
        self.best_score = score
        self.best_params = self.model.params.snapshot()
        if self.checkpoint_path is not None:
            meta = dict(self.meta)
            meta['epoch'] = epoch
            save_checkpoint(self.checkpoint_path, self.model.params, meta)
            self.logger.debug("checkpoint written to %s",
                              self.checkpoint_path)

    def post_iteration(self):
        """Bookkeeping at the end of an epoch. Raise `UserExitRequest` to
        stop training."""
        pass

    def train_epoch(self):
        """Run one pass over the training set; return the mean batch loss.

        Return `None` if a loss or gradient stops being finite.
        """
        model = self.model
        losses = []
        for batch in self.batches():
            loss, grads = model.grad(batch, l2=self.cfg.l2, train=True,
                                     rng=self.dropout_rng)
            if not np.isfinite(loss):
                self.logger.error("loss is %r in epoch %d", loss,
                                  self.epoch + 1)
                return None
            try:
                self.optimizer.step(grads)
            except NonFiniteGradientError:
                return None
            losses.append(loss)
        return float(np.mean(losses))

    def solve(self):
        """Train for the configured number of epochs."""
        self._tstart = cputime()
        self._metrics_fp = None
        if self.metrics_path is not None:
            self._metrics_fp = io.open(self.metrics_path, 'w',
                                       encoding='utf-8')
        self.logger.info(self.hdr)
        status = ""
        try:
            self._select(0, self._evaluate(0))
            while self.epoch < self.cfg.epochs:
                loss = self.train_epoch()
                if loss is None:
                    status = "div"
                    break
                self.epoch += 1
                self._select(self.epoch, self._evaluate(self.epoch, loss))
                try:
                    self.post_iteration()
                except UserExitRequest:
                    status = "usr"
                    break
        finally:
            if self._metrics_fp is not None:
                self._metrics_fp.close()

        if status == "div":
            self.model.params.restore(self.best_params)
            self.logger.error("training diverged; parameters of epoch %d "
                              "restored", self.best_epoch)
        elif status == "":
            status = "itr"
        self.status = status
        self.tsolve = cputime() - self._tstart
        self.logger.info("best epoch %d, score %.4f, %d gradient evaluations",
                         self.best_epoch, self.best_score, self.model.ngrad)


def train_run(model_cfg, train_cfg, dataset, **kwargs):
    """Build the model of `dataset.task` and train it.

    The dropout rates of `train_cfg` override those of `model_cfg`. Keywords
    are passed to :class:`Trainer`; the trained :class:`Trainer` is
    returned.
    """
    model_cfg = model_cfg.replace(input_dropout=train_cfg.input_dropout,
                                  output_dropout=train_cfg.output_dropout)
    model = build_model(dataset.task, model_cfg, dataset.embeddings,
                        logger_name=kwargs.pop('model_logger_name',
                                               'nti.model'))
    trainer = Trainer(model, dataset.train, dataset.dev or (),
                      train_cfg=train_cfg, **kwargs)
    trainer.solve()
    return trainer
