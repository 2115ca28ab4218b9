#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Command-line driver: train, eval, attend, pad-sweep and neighbors."""

import csv
import io
import logging
import os
import sys
from argparse import ArgumentParser
from collections import OrderedDict

import nti
from nti.data.embeddings import load_embeddings, random_embeddings
from nti.data.readers import load_snli, load_wikiqa, load_sst, \
    expand_phrases
from nti.data.records import SentencePair
from nti.data.synthetic import synthetic_task, synthetic_task_classes, \
    synthetic_pairs
from nti.data.vocab import Vocabulary
from nti.model.checkpoint import load_checkpoint, restore_params
from nti.model.ntimodel import build_model, PairClassifier
from nti.model.variants import ModelConfig, VARIANTS, SCORE_MODES, \
    TREE_SHAPES, DTYPES, training_preset, variant_config
from nti.optimize.metrics import accuracy_by_padding, nearest_neighbors
from nti.optimize.trainer import Dataset, TrainConfig, evaluate, train_run
from nti.tools.config import read_config, write_config, merge, parse_value
from nti.tools.exceptions import ConfigError, TrainingDivergence, \
    UserExitRequest
from nti.tools.logs import config_logger, get_logger

__docformat__ = 'restructuredtext'

OUTPUT_DIR_ENV = 'NTI_OUTPUT_DIR'
CHECKPOINT_FILE = 'model.ckpt'
METRICS_FILE = 'metrics.log'
FROZEN_CONFIG_FILE = 'run.cfg'

SYNTHETIC_TASKS = OrderedDict([('synthetic-parity', 'parity'),
                               ('synthetic-contains-pair', 'contains_pair'),
                               ('synthetic-length-bucket', 'length_bucket')])
TASKS = ('snli', 'wikiqa', 'sst-binary', 'sst-fine') + \
    tuple(SYNTHETIC_TASKS) + ('synthetic-pairs',)
FILE_TASKS = ('snli', 'wikiqa', 'sst-binary', 'sst-fine')

# Settings of a run in the order they are frozen.
DEFAULTS = OrderedDict([
    ('task', None), ('variant', None),
    ('data', None), ('dev', None), ('embeddings', None),
    ('embedding_dim', None), ('lowercase', False), ('phrases', True),
    ('n_examples', 200), ('n_dev', 0), ('max_len', 16), ('seed', 0),
    ('k', 300), ('score_mode', 'mlp'), ('tie_encoder_weights', True),
    ('mlp_hidden', 1024), ('tree_shape', 'balanced'), ('dtype', 'float64'),
    ('batch_size', None), ('learning_rate', None), ('l2', None),
    ('epochs', None), ('input_dropout', None), ('output_dropout', None),
])
MODEL_KEYS = ('k', 'score_mode', 'tie_encoder_weights', 'mlp_hidden',
              'tree_shape', 'dtype')
TRAIN_KEYS = ('batch_size', 'learning_rate', 'l2', 'epochs', 'input_dropout',
              'output_dropout', 'seed')

log = get_logger('nti.cli')


def _bool(text):
    value = parse_value(text)
    if not isinstance(value, bool):
        raise ValueError("expected true or false, got %r" % text)
    return value


class RunConfig(object):
    """Resolved settings of a run.

    Later layers override earlier ones: built-in defaults, the training
    preset of the (task, variant), the ``[run]`` file, then flags.
    """

    def __init__(self, values):
        self.values = OrderedDict(values)

    def __getattr__(self, name):
        try:
            return self.__dict__['values'][name]
        except KeyError:
            raise AttributeError(name)

    @classmethod
    def resolve(cls, flags, config_path=None):
        """Build a configuration from parsed `flags` and an optional file."""
        layer = read_config(config_path) if config_path else OrderedDict()
        unknown = [key for key in layer if key not in DEFAULTS]
        if unknown:
            raise ConfigError("unknown settings in %s: %s"
                              % (config_path, ", ".join(unknown)))
        flags = OrderedDict((key, flags.get(key)) for key in DEFAULTS)
        task = flags['task'] or layer.get('task')
        if task not in TASKS:
            raise ConfigError("task must be one of %s, got %r"
                              % (", ".join(TASKS), task))
        variant = flags['variant'] or layer.get('variant') or \
            ('nti-anf-lstm' if task == 'wikiqa' else 'nti-slstm')
        preset = training_preset(task, variant)
        values = merge(DEFAULTS, preset, layer, flags)
        values['task'] = task
        values['variant'] = variant
        if values['embeddings'] is None and values['embedding_dim'] is None:
            values['embedding_dim'] = values['k']
        run = cls(values)
        run.validate()
        return run

    def validate(self):
        if self.task in FILE_TASKS and not self.data:
            raise ConfigError("task %s needs --data" % self.task)
        if self.task == 'wikiqa' and VARIANTS[self.variant]['attention_mode'] \
                != 'none':
            raise ConfigError("answer selection uses an encoder variant")
        self.train_config()
        self.check_paths()

    def check_paths(self):
        for key in ('data', 'dev', 'embeddings'):
            path = self.values.get(key)
            if path and not os.path.isfile(path):
                raise IOError("%s file %s does not exist" % (key, path))

    def train_config(self):
        return TrainConfig(**dict((k, self.values[k]) for k in TRAIN_KEYS))

    def model_config(self, n_classes, k_in):
        fields = dict((k, self.values[k]) for k in MODEL_KEYS)
        return variant_config(self.variant, n_classes=n_classes, k_in=k_in,
                              seed=self.seed,
                              input_dropout=self.input_dropout,
                              output_dropout=self.output_dropout, **fields)

    def write(self, path):
        write_config(path, self.values,
                     header="nti %s frozen run configuration" % nti.__version__)


def n_classes_of(task):
    if task in SYNTHETIC_TASKS:
        return synthetic_task_classes(SYNTHETIC_TASKS[task])
    return {'sst-binary': 2, 'sst-fine': 5, 'wikiqa': 2}.get(task, 3)


def read_examples(task, path, training=False, phrases=True):
    """Examples of a file task; sentiment training uses labeled phrases."""
    if task == 'snli':
        return load_snli(path)
    if task == 'wikiqa':
        return load_wikiqa(path)
    sentences = load_sst(path, mode=task[len('sst-'):])
    if training and phrases:
        return expand_phrases(sentences)
    return sentences


def synthetic_split(run, split):
    """Regenerate a split of a synthetic task from the run seed."""
    offset = {'train': 0, 'dev': 1, 'test': 2}[split]
    n = run.n_dev if split == 'dev' and run.n_dev else run.n_examples
    if run.task == 'synthetic-pairs':
        return synthetic_pairs(n=n, seed=run.seed + offset,
                               max_len=run.max_len)
    return synthetic_task(SYNTHETIC_TASKS[run.task], seed=run.seed + offset,
                          n=n, max_len=run.max_len)


def load_split(run, split, path=None):
    """Examples of `split`, from `path` if given."""
    if path is not None:
        if not os.path.isfile(path):
            raise IOError("data file %s does not exist" % path)
        return read_examples(run.task, path)
    if run.task not in FILE_TASKS:
        return synthetic_split(run, split)
    source = {'train': run.data, 'dev': run.dev}.get(split)
    if not source:
        raise ConfigError("no %s data recorded for this run; use --data"
                          % split)
    return read_examples(run.task, source)


def token_lists(examples):
    for ex in examples:
        for field in ('tokens', 'premise', 'hypothesis', 'question',
                      'answer'):
            if hasattr(ex, field):
                yield getattr(ex, field)


def make_embeddings(run, vocab):
    if run.embeddings:
        return load_embeddings(run.embeddings, vocab,
                               dim=run.embedding_dim)
    return random_embeddings(vocab, run.embedding_dim, seed=run.seed)


def load_model(path):
    """Rebuild a trained model from a checkpoint; return (model, run)."""
    meta, values = load_checkpoint(path)
    try:
        run = RunConfig(meta['run'])
        tokens = meta['vocab']
        cfg = ModelConfig(**meta['model'])
    except (KeyError, TypeError) as exc:
        raise ConfigError("incomplete checkpoint configuration: %s" % exc)
    vocab = Vocabulary(tokens[2:], lowercase=run.lowercase)
    model = build_model(run.task, cfg, make_embeddings(run, vocab))
    restore_params(model.params, values)
    return model, run


def output_dir(args):
    out = args.output_dir or os.environ.get(OUTPUT_DIR_ENV) or os.curdir
    if not os.path.isdir(out):
        os.makedirs(out)
    return out


def cmd_train(args):
    """Train a model; write checkpoint, metrics log and frozen config."""
    run = RunConfig.resolve(vars(args), args.config)
    out = output_dir(args)
    if run.task in FILE_TASKS:
        train = read_examples(run.task, run.data, training=True,
                              phrases=run.phrases)
        dev = read_examples(run.task, run.dev) if run.dev else []
    else:
        train = synthetic_split(run, 'train')
        dev = synthetic_split(run, 'dev') if run.n_dev else []
    if not train:
        raise ValueError("the training set is empty")

    vocab = Vocabulary.build(token_lists(train + dev),
                             lowercase=run.lowercase)
    embeddings = make_embeddings(run, vocab)
    model_cfg = run.model_config(n_classes_of(run.task), embeddings.dim)
    run.write(os.path.join(out, FROZEN_CONFIG_FILE))
    log.info("%s on %s: %d training and %d dev examples, %d tokens",
             run.variant, run.task, len(train), len(dev), len(vocab))

    meta = {'version': nti.__version__, 'run': run.values,
            'model': model_cfg.as_dict(), 'vocab': vocab.tokens}
    trainer = train_run(model_cfg, run.train_config(),
                        Dataset(run.task, train, dev, embeddings),
                        checkpoint_path=os.path.join(out, CHECKPOINT_FILE),
                        metrics_path=os.path.join(out, METRICS_FILE),
                        meta=meta)
    if trainer.status == 'div':
        raise TrainingDivergence("training diverged after epoch %d; best "
                                 "checkpoint of epoch %d kept"
                                 % (trainer.epoch, trainer.best_epoch))
    log.info("status %s, best epoch %d, %.2fs", trainer.status,
             trainer.best_epoch, trainer.tsolve)


def cmd_eval(args):
    """Print the metrics of a checkpoint on one split."""
    model, run = load_model(args.checkpoint)
    examples = load_split(run, args.split, args.data)
    for name, value in evaluate(model, examples).items():
        sys.stdout.write("%s\t%s\t%.6f\n" % (args.split, name, value))


def cmd_attend(args):
    """Write the node-by-node attention heatmap of one pair as CSV."""
    model, _ = load_model(args.checkpoint)
    if not isinstance(model, PairClassifier):
        raise ConfigError("attention maps need a premise/hypothesis model")
    pair = SentencePair(tuple(args.premise.split()),
                        tuple(args.hypothesis.split()), 'entailment')
    rows, cols, weights = model.attention_map(pair)
    path = args.output or os.path.join(output_dir(args), 'attention.csv')
    with io.open(path, 'w', encoding='utf-8', newline='') as fp:
        writer = csv.writer(fp)
        writer.writerow([u''] + cols)
        for label, row in zip(rows, weights):
            writer.writerow([label] + ['%.17g' % w for w in row])
    sys.stdout.write("%s\n" % path)


def cmd_pad_sweep(args):
    """Print the accuracy of each padding-size bucket."""
    model, run = load_model(args.checkpoint)
    examples = load_split(run, args.split, args.data)
    table = accuracy_by_padding(model, examples)
    sys.stdout.write("padding\tsize\taccuracy\n")
    for pad, (size, acc) in table.items():
        sys.stdout.write("%d\t%d\t%.6f\n" % (pad, size, acc))
    accs = [acc for _, acc in table.values()]
    sys.stdout.write("spread\t%d\t%.6f\n"
                     % (sum(s for s, _ in table.values()),
                        max(accs) - min(accs)))


def cmd_neighbors(args):
    """Print the corpus sentences closest to a query."""
    model, _ = load_model(args.checkpoint)
    with io.open(args.corpus, encoding='utf-8') as fp:
        corpus = [line.split() for line in fp if line.strip()]
    if not corpus:
        raise ValueError("the corpus %s is empty" % args.corpus)
    query = model.represent(args.query.split())
    vectors = [model.represent(tokens) for tokens in corpus]
    for rank, (i, sim) in enumerate(nearest_neighbors(query, vectors,
                                                      args.top), 1):
        sys.stdout.write(u"%d\t%.6f\t%s\n" % (rank, sim, u" ".join(corpus[i])))


def build_parser():
    desc = """Neural tree indexers: train, evaluate and analyze models."""
    parser = ArgumentParser(prog='nti', description=desc)
    parser.add_argument("--version", action="version",
                        version="%(prog)s " + nti.__version__)
    parser.add_argument("-q", "--quiet", action="store_true",
                        help="only log warnings and errors")
    sub = parser.add_subparsers(dest="command")
    sub.required = True

    tr = sub.add_parser("train", help="train a model")
    tr.add_argument("--config", help="configuration file with a [run] section")
    tr.add_argument("--task", choices=TASKS)
    tr.add_argument("--variant", choices=sorted(VARIANTS))
    tr.add_argument("--data", help="training file")
    tr.add_argument("--dev", help="development file")
    tr.add_argument("--embeddings", help="text-format word vectors")
    tr.add_argument("--embedding-dim", type=int,
                    help="width of random embeddings (default: k)")
    tr.add_argument("--lowercase", action="store_const", const=True)
    tr.add_argument("--phrases", type=_bool,
                    help="train sentiment models on labeled phrases")
    tr.add_argument("--n-examples", type=int,
                    help="synthetic training examples")
    tr.add_argument("--n-dev", type=int, help="synthetic dev examples")
    tr.add_argument("--max-len", type=int, help="synthetic sentence length")
    tr.add_argument("--seed", type=int)
    tr.add_argument("--k", type=int, help="hidden width")
    tr.add_argument("--score-mode", choices=SCORE_MODES)
    tr.add_argument("--tie-encoder-weights", type=_bool)
    tr.add_argument("--mlp-hidden", type=int)
    tr.add_argument("--tree-shape", choices=TREE_SHAPES)
    tr.add_argument("--dtype", choices=DTYPES)
    tr.add_argument("--batch-size", type=int)
    tr.add_argument("--learning-rate", type=float)
    tr.add_argument("--l2", type=float)
    tr.add_argument("--epochs", type=int)
    tr.add_argument("--input-dropout", type=float)
    tr.add_argument("--output-dropout", type=float)
    tr.add_argument("--output-dir", help="default: $%s or ." % OUTPUT_DIR_ENV)
    tr.set_defaults(func=cmd_train)

    for name, func, hlp in (("eval", cmd_eval, "evaluate a checkpoint"),
                            ("pad-sweep", cmd_pad_sweep,
                             "accuracy per padding size")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("--checkpoint", required=True)
        p.add_argument("--split", choices=("train", "dev", "test"),
                       default="dev")
        p.add_argument("--data", help="evaluation file (default: the "
                       "file or synthetic split of the run)")
        p.set_defaults(func=func)

    at = sub.add_parser("attend", help="export an attention heatmap")
    at.add_argument("--checkpoint", required=True)
    at.add_argument("--premise", required=True)
    at.add_argument("--hypothesis", required=True)
    at.add_argument("--output", help="CSV file (default: attention.csv in "
                    "the output directory)")
    at.add_argument("--output-dir")
    at.set_defaults(func=cmd_attend)

    nb = sub.add_parser("neighbors", help="nearest sentences by cosine")
    nb.add_argument("--checkpoint", required=True)
    nb.add_argument("--query", required=True)
    nb.add_argument("--corpus", required=True, help="one sentence per line")
    nb.add_argument("--top", type=int, default=10)
    nb.set_defaults(func=cmd_neighbors)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "train" and args.task in FILE_TASKS and \
            not args.data and not args.config:
        parser.error("--data is required for task %s" % args.task)

    config_logger("nti", "%(name)-10s %(levelname)-5s %(message)s",
                  stream=sys.stderr,
                  level=logging.WARN if args.quiet else logging.INFO)
    try:
        args.func(args)
    except (ValueError, ArithmeticError, EnvironmentError,
            UserExitRequest) as exc:
        sys.stderr.write("nti: error: %s: %s\n"
                         % (type(exc).__name__, str(exc).replace("\n", " ")))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
