# -*- coding: utf-8 -*-
"""Matching two encoded trees through attention.

Hypothesis nodes are always visited in the bottom-up, left-to-right
schedule of the hypothesis tree.
"""

import numpy as np

from nti.ad import functions as F
from nti.ad.tensor import Tensor
from nti.model.attention import GlobalAttnParams, TreeAttnParams, \
    global_attention, tree_attention
from nti.model.cells import NodeState, LeafLstmParams, lstm_leaf_step

__docformat__ = 'restructuredtext'


class MatchParams(object):
    """Attention, recurrent-carry and aggregation parameters of a matcher.

    :parameters:
        :store:  `ParamStore`
        :prefix: parameter name prefix
        :cfg:    `ModelConfig` with a matching ``attention_mode``
    """

    def __init__(self, store, prefix, cfg):
        k = cfg.k
        self.k = k
        self.mode = 'tree' if cfg.attention_mode.endswith('_tree') \
            else 'global'
        if self.mode == 'global':
            self.attn = GlobalAttnParams(store, prefix + '.ga', k,
                                         cfg.score_mode)
        else:
            self.attn = TreeAttnParams(store, prefix + '.ta', k,
                                       cfg.score_mode)
        self.W_qh = self.W_qr = self.lstm = None
        if cfg.attention_mode.startswith('node_by_node'):
            self.W_qh = store.param(prefix + '.carry.W_h', (k, k))
            self.W_qr = store.param(prefix + '.carry.W_r', (k, k))
        else:
            self.lstm = LeafLstmParams(store, prefix + '.lstm', k, k)


def attend_tree(tree, q, p):
    """Attend over `tree` with query `q`; return (output, weights).

    Global attention returns its weights over all nodes; tree attention
    returns the dict of local weights per non-leaf node.
    """
    if p.mode == 'global':
        res = global_attention(tree.node_matrix(), q, p.attn)
        return res.output, res.weights
    res = tree_attention(tree.topology, tree.node_h(), q, p.attn)
    return res.output, res.weights


def node_schedule(tree):
    """Node ids of `tree` in bottom-up, left-to-right order."""
    return [node for level in tree.topology.levels for node in level]


def node_by_node_attend(premise, hypothesis, p, return_weights=False):
    """Attend over the premise tree at every hypothesis node, recurrently.

    At step s the query is ``tanh(W_h·h_s + W_r·r_{s−1})`` with ``r_0 = 0``
    and ``r_s`` is the attention output over the premise tree. Return the
    last ``r``, and the per-step weights if `return_weights` is set.
    """
    r = Tensor(np.zeros(p.k, dtype=premise.root.h.dtype))
    weights = []
    for node in node_schedule(hypothesis):
        h_s = hypothesis.states[node].h
        query = F.tanh(F.add(F.matmul(p.W_qh, h_s), F.matmul(p.W_qr, r)))
        r, alpha = attend_tree(premise, query, p)
        weights.append(alpha)
    if return_weights:
        return r, weights
    return r


def attention_vectors(premise, hypothesis, p):
    """Attention output over `premise` for every node of `hypothesis`."""
    return [attend_tree(premise, hypothesis.states[node].h, p)[0]
            for node in node_schedule(hypothesis)]


def aggregate(vectors, p):
    """Run the aggregation LSTM over `vectors`; return its last h."""
    zeros = Tensor(np.zeros(p.k, dtype=vectors[0].dtype))
    state = NodeState(zeros, zeros)
    for v in vectors:
        state = lstm_leaf_step(v, state, p.lstm)
    return state.h


def tree_match(premise, hypothesis, p):
    """Aggregate the premise attention vectors of all hypothesis nodes."""
    return aggregate(attention_vectors(premise, hypothesis, p), p)


def full_tree_match(premise, hypothesis, p):
    """Match in both directions with one shared aggregation LSTM.

    Return the concatenation ``[premise→hypothesis; hypothesis→premise]``
    of length 2k.
    """
    forward = tree_match(premise, hypothesis, p)
    backward = tree_match(hypothesis, premise, p)
    return F.concat([forward, backward])
