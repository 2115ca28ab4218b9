# -*- coding: utf-8 -*-
"""Model configuration and the named model variants.

Each variant fixes the leaf function, the non-leaf function and the way two
trees are matched. The training presets are the reference settings of
each model; they apply unless a configuration file or the command line
overrides them.
"""

import numpy as np

from nti.tools.exceptions import ConfigError

__docformat__ = 'restructuredtext'

LEAF_MODES = ('none', 'lstm')
NONLEAF_MODES = ('slstm', 'anf')
ATTENTION_MODES = ('none', 'node_by_node_global', 'node_by_node_tree',
                   'tree_match_global', 'tree_match_tree',
                   'full_tree_match_global')
SCORE_MODES = ('mlp', 'bilinear')
TREE_SHAPES = ('balanced', 'left_branching')
DTYPES = ('float64', 'float32')


class ModelConfig(object):
    """Validated model hyper-parameters."""

    fields = ('k', 'k_in', 'leaf_mode', 'nonleaf_mode', 'attention_mode',
              'score_mode', 'tie_encoder_weights', 'input_dropout',
              'output_dropout', 'mlp_hidden', 'n_classes', 'tree_shape',
              'dtype', 'seed')

    def __init__(self, **kwargs):
        """Build a configuration from keywords.

        :keywords:
            :k:                   hidden width (default: 300)
            :k_in:                embedding width (default: `k`)
            :leaf_mode:           ``'none'`` or ``'lstm'``
            :nonleaf_mode:        ``'slstm'`` or ``'anf'``
            :attention_mode:      one of `ATTENTION_MODES` (default 'none')
            :score_mode:          ``'mlp'`` (default) or ``'bilinear'``
            :tie_encoder_weights: share one encoder between the two
                                  sentences of a pair (default: `True`)
            :input_dropout:       dropout rate on leaf inputs (default: 0)
            :output_dropout:      dropout rate on classifier input
                                  (default: 0)
            :mlp_hidden:          hidden units of the head MLP (1024)
            :n_classes:           number of output classes (default: 3)
            :tree_shape:          ``'balanced'`` or ``'left_branching'``
            :dtype:               ``'float64'`` or ``'float32'``
            :seed:                initialization seed (default: 0)
        """
        unknown = set(kwargs) - set(self.fields)
        if unknown:
            raise ConfigError("unknown model fields: %s"
                              % ", ".join(sorted(unknown)))
        self.k = int(kwargs.get('k', 300))
        self.k_in = int(kwargs.get('k_in', None) or self.k)
        self.leaf_mode = kwargs.get('leaf_mode', 'none')
        self.nonleaf_mode = kwargs.get('nonleaf_mode', 'slstm')
        self.attention_mode = kwargs.get('attention_mode', 'none')
        self.score_mode = kwargs.get('score_mode', 'mlp')
        self.tie_encoder_weights = bool(kwargs.get('tie_encoder_weights',
                                                   True))
        self.input_dropout = float(kwargs.get('input_dropout', 0.0))
        self.output_dropout = float(kwargs.get('output_dropout', 0.0))
        self.mlp_hidden = int(kwargs.get('mlp_hidden', 1024))
        self.n_classes = int(kwargs.get('n_classes', 3))
        self.tree_shape = kwargs.get('tree_shape', 'balanced')
        self.dtype = kwargs.get('dtype', 'float64')
        self.seed = int(kwargs.get('seed', 0))
        self.validate()

    def validate(self):
        """Raise `ConfigError` on invalid or inconsistent values."""
        for name, allowed in (('leaf_mode', LEAF_MODES),
                              ('nonleaf_mode', NONLEAF_MODES),
                              ('attention_mode', ATTENTION_MODES),
                              ('score_mode', SCORE_MODES),
                              ('tree_shape', TREE_SHAPES),
                              ('dtype', DTYPES)):
            if getattr(self, name) not in allowed:
                raise ConfigError("%s must be one of %s, got %r"
                                  % (name, ", ".join(allowed),
                                     getattr(self, name)))
        if self.k < 1 or self.k_in < 1 or self.mlp_hidden < 1:
            raise ConfigError("widths must be positive")
        if self.n_classes < 1:
            raise ConfigError("n_classes must be positive")
        for name in ('input_dropout', 'output_dropout'):
            rate = getattr(self, name)
            if not 0.0 <= rate < 1.0:
                raise ConfigError("%s must lie in [0, 1), got %r"
                                  % (name, rate))
        if self.nonleaf_mode == 'anf' and self.attention_mode != 'none':
            raise ConfigError("the attentive non-leaf function takes its "
                              "query from an answer encoder, not from a "
                              "matching model")

    @property
    def np_dtype(self):
        return np.dtype(self.dtype)

    @property
    def is_matching(self):
        """True if two trees are matched instead of encoded separately."""
        return self.attention_mode != 'none'

    def as_dict(self):
        return dict((f, getattr(self, f)) for f in self.fields)

    def replace(self, **kwargs):
        """Return a copy with some fields changed."""
        d = self.as_dict()
        d.update(kwargs)
        return ModelConfig(**d)

    def __eq__(self, other):
        return isinstance(other, ModelConfig) and \
            self.as_dict() == other.as_dict()

    def __repr__(self):
        return "ModelConfig(%s)" % ", ".join(
            "%s=%r" % (f, getattr(self, f)) for f in self.fields)


# Model fields of every named variant.
VARIANTS = {
    'nti-slstm': dict(leaf_mode='none', nonleaf_mode='slstm',
                      attention_mode='none'),
    'nti-slstm-lstm': dict(leaf_mode='lstm', nonleaf_mode='slstm',
                           attention_mode='none'),
    'nti-slstm-nbn-global': dict(leaf_mode='none', nonleaf_mode='slstm',
                                 attention_mode='node_by_node_global',
                                 tie_encoder_weights=True),
    'nti-slstm-nbn-tree': dict(leaf_mode='none', nonleaf_mode='slstm',
                               attention_mode='node_by_node_tree',
                               tie_encoder_weights=True),
    'nti-slstm-lstm-nbn-global': dict(leaf_mode='lstm', nonleaf_mode='slstm',
                                      attention_mode='node_by_node_global'),
    'nti-slstm-lstm-nbn-tree': dict(leaf_mode='lstm', nonleaf_mode='slstm',
                                    attention_mode='node_by_node_tree'),
    'tree-match-global': dict(leaf_mode='lstm', nonleaf_mode='slstm',
                              attention_mode='tree_match_global'),
    'tree-match-tree': dict(leaf_mode='lstm', nonleaf_mode='slstm',
                            attention_mode='tree_match_tree'),
    'full-tree-match-global': dict(leaf_mode='lstm', nonleaf_mode='slstm',
                                   attention_mode='full_tree_match_global'),
    'nti-anf-lstm': dict(leaf_mode='lstm', nonleaf_mode='anf',
                         attention_mode='none'),
}

NLI_VARIANTS = tuple(v for v in sorted(VARIANTS) if v != 'nti-anf-lstm')

# Reference training settings per (task, variant).
_NLI_PRESETS = {
    'nti-slstm': dict(learning_rate=1e-3, l2=3e-5, epochs=90,
                      input_dropout=0.10, output_dropout=0.20),
    'nti-slstm-lstm': dict(learning_rate=1e-3, l2=3e-5, epochs=90,
                           input_dropout=0.10, output_dropout=0.20),
    'nti-slstm-nbn-global': dict(learning_rate=3e-4, l2=1e-5, epochs=40,
                                 input_dropout=0.15, output_dropout=0.15),
    'nti-slstm-nbn-tree': dict(learning_rate=3e-4, l2=1e-5, epochs=40,
                               input_dropout=0.15, output_dropout=0.15),
    'nti-slstm-lstm-nbn-global': dict(learning_rate=3e-4, l2=1e-5, epochs=10,
                                      input_dropout=0.10,
                                      output_dropout=0.15),
    'nti-slstm-lstm-nbn-tree': dict(learning_rate=3e-4, l2=1e-5, epochs=10,
                                    input_dropout=0.10, output_dropout=0.15),
    'tree-match-global': dict(learning_rate=3e-4, l2=3e-5, epochs=20,
                              input_dropout=0.20, output_dropout=0.20),
    'tree-match-tree': dict(learning_rate=3e-4, l2=3e-5, epochs=20,
                            input_dropout=0.20, output_dropout=0.20),
    'full-tree-match-global': dict(learning_rate=3e-4, l2=3e-5, epochs=20,
                                   input_dropout=0.20, output_dropout=0.20),
}


def training_preset(task, variant):
    """Return the reference training settings for `variant` on `task`.

    :parameters:
        :task:    ``'snli'``, ``'wikiqa'``, ``'sst-binary'``, ``'sst-fine'``
                  or a synthetic task (which gets a desk-scale default)
        :variant: a key of `VARIANTS`
    """
    if variant not in VARIANTS:
        raise ConfigError("unknown variant %r" % variant)
    if task == 'snli':
        preset = dict(_NLI_PRESETS.get(variant, _NLI_PRESETS['nti-slstm']))
        preset['batch_size'] = 32
        return preset
    if task == 'wikiqa':
        return dict(batch_size=4, learning_rate=1e-3, l2=0.0, epochs=10,
                    input_dropout=0.20, output_dropout=0.0)
    if task in ('sst-binary', 'sst-fine'):
        fine = task == 'sst-fine'
        if variant == 'nti-slstm-lstm':
            drops = (0.20, 0.30 if fine else 0.20)
        else:
            drops = (0.20, 0.30) if fine else (0.10, 0.20)
        return dict(batch_size=64, learning_rate=1e-3, l2=3e-5, epochs=10,
                    input_dropout=drops[0], output_dropout=drops[1])
    return dict(batch_size=8, learning_rate=1e-2, l2=0.0, epochs=50,
                input_dropout=0.0, output_dropout=0.0)


def variant_config(variant, **kwargs):
    """Return the :class:`ModelConfig` of `variant`, updated by keywords."""
    if variant not in VARIANTS:
        raise ConfigError("unknown variant %r (choose from %s)"
                          % (variant, ", ".join(sorted(VARIANTS))))
    fields = dict(VARIANTS[variant])
    fields.update(kwargs)
    return ModelConfig(**fields)
