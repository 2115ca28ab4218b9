# -*- coding: utf-8 -*-
"""The tree encoder: leaves, then non-leaf nodes bottom-up."""

import numpy as np

from nti.ad import functions as F
from nti.ad.tensor import Tensor
from nti.model.cells import NodeState, LeafLstmParams, SLstmParams, \
    AnfParams, lstm_leaf_step, slstm_compose, anf_compose
from nti.optimize.regularization import apply_dropout
from nti.tree.topology import pad_sequence, build_full_binary_tree, \
    build_left_branching_tree
from nti.tools.exceptions import ConfigError, ShapeError, TopologyError

__docformat__ = 'restructuredtext'


class EncoderParams(object):
    """Parameters of one tree encoder, registered under `prefix`.

    Two encoders registered under the same prefix share their weights.
    """

    def __init__(self, store, prefix, cfg):
        self.prefix = prefix
        self.k = cfg.k
        self.k_in = cfg.k_in
        self.leaf = None
        self.proj = None
        if cfg.leaf_mode == 'lstm':
            self.leaf = LeafLstmParams(store, prefix + '.leaf', cfg.k_in,
                                       cfg.k)
        elif cfg.k_in != cfg.k:
            self.proj = store.param(prefix + '.proj', (cfg.k, cfg.k_in))
        if cfg.nonleaf_mode == 'slstm':
            self.node = SLstmParams(store, prefix + '.slstm', cfg.k)
        else:
            self.node = AnfParams(store, prefix + '.anf', cfg.k,
                                  cfg.score_mode)


class EncodedTree(object):
    """Topology and per-node states of an encoded sequence."""

    def __init__(self, topology, states, leaf_final=None):
        if len(states) != topology.n_nodes:
            raise ShapeError("%d states for %d nodes"
                             % (len(states), topology.n_nodes))
        self.topology = topology
        self.states = states
        self.leaf_final = leaf_final

    @property
    def root(self):
        """State of the root node."""
        return self.states[self.topology.root]

    def node_h(self):
        """List of node vectors ordered by node id."""
        return [s.h for s in self.states]

    def node_matrix(self):
        """Node vectors as the columns of a ``[k×(2n−1)]`` tensor."""
        return F.concat_columns(self.node_h())


def build_topology(n_tokens, tree_shape='balanced'):
    """Return the topology over `n_tokens` real tokens and the leaf count."""
    if n_tokens < 1:
        raise TopologyError("cannot build a tree over an empty sequence")
    if tree_shape == 'left_branching':
        return build_left_branching_tree(n_tokens)
    n_leaves = len(pad_sequence(range(n_tokens), None))
    return build_full_binary_tree(n_leaves, n_real=n_tokens)


def encode(x, cfg, p, q_external=None, **kwargs):
    """Encode an embedded sequence into a tree of node states.

    :parameters:
        :x:   array ``[n×k_in]`` of embeddings (n ≥ 1)
        :cfg: :class:`ModelConfig`
        :p:   :class:`EncoderParams`

    :keywords:
        :q_external: query vector, required by the attentive non-leaf
                     function and ignored otherwise
        :init_state: initial state of the leaf LSTM (default: zeros)
        :train:      training mode, enables input dropout (default: False)
        :rng:        random generator for dropout masks

    The sequence is padded with zero vectors to a power of two for balanced
    trees. With the leaf LSTM, leaf ``h`` is the LSTM output and leaf ``c``
    its memory; otherwise leaf ``h`` is the (projected) embedding and leaf
    ``c`` is zero.
    """
    train = kwargs.get('train', False)
    rng = kwargs.get('rng', None)
    init_state = kwargs.get('init_state', None)
    dtype = cfg.np_dtype

    x = np.asarray(x, dtype=dtype)
    if x.ndim != 2 or x.shape[0] == 0:
        raise TopologyError("encode expects a non-empty [n x k_in] sequence, "
                            "got shape %s" % (x.shape,))
    if x.shape[1] != cfg.k_in:
        raise ShapeError("embedding width %d does not match k_in=%d"
                         % (x.shape[1], cfg.k_in))
    if cfg.nonleaf_mode == 'anf' and q_external is None:
        raise ConfigError("the attentive non-leaf function needs a query")

    topo = build_topology(x.shape[0], cfg.tree_shape)
    rows = list(x) + [np.zeros(cfg.k_in, dtype=dtype)] * \
        (topo.n_leaves - x.shape[0])
    zeros = Tensor(np.zeros(cfg.k, dtype=dtype))

    states = [None] * topo.n_nodes
    leaf_final = None
    if p.leaf is not None:
        state = init_state
        if state is None:
            state = NodeState(zeros, zeros)
        for i, row in enumerate(rows):
            state = lstm_leaf_step(Tensor(row, dtype=dtype), state, p.leaf)
            h = apply_dropout(state.h, cfg.input_dropout, rng, train)
            states[i] = NodeState(h, state.c)
        leaf_final = state
    else:
        for i, row in enumerate(rows):
            h = apply_dropout(Tensor(row, dtype=dtype), cfg.input_dropout,
                              rng, train)
            if p.proj is not None:
                h = F.matmul(p.proj, h)
            states[i] = NodeState(h, zeros)

    for node in topo.internal_nodes():
        l, r = topo.children(node)
        if cfg.nonleaf_mode == 'slstm':
            states[node] = slstm_compose(states[l], states[r], p.node)
        else:
            h = anf_compose(states[l].h, states[r].h, q_external, p.node)
            states[node] = NodeState(h, zeros)

    return EncodedTree(topo, states, leaf_final)
