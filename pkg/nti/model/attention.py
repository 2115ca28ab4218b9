# -*- coding: utf-8 -*-
u"""Attention scoring and attention over tree nodes.

Three mechanisms share one pattern: score the columns of a matrix ``S``
against a query ``q``, normalize the scores with softmax to weights ``α``,
and blend ``z = S·αᵀ``. The global attention blends all tree nodes at once;
the tree attention updates every non-leaf node from its own and its
children's representations, bottom-up.
"""

from collections import namedtuple

from nti.ad import functions as F
from nti.tools.exceptions import ShapeError

__docformat__ = 'restructuredtext'

SCORE_MODES = ('mlp', 'bilinear')

AttentionResult = namedtuple('AttentionResult', ['weights', 'blended',
                                                 'output'])
AttentionResult.__doc__ = u"""Weights α, blended vector z and output of an
attention step. ``weights`` is a tensor with one entry per scored column."""

TreeAttentionResult = namedtuple('TreeAttentionResult', ['states', 'output',
                                                         'weights'])
TreeAttentionResult.__doc__ = """Updated per-node vectors, root output and
the local weights (over parent, left, right) of every non-leaf node."""


class ScoreParams(object):
    """Parameters of the scoring function f^score."""

    def __init__(self, store, prefix, k, mode='mlp'):
        if mode not in SCORE_MODES:
            raise ValueError("unknown score mode %r" % mode)
        self.mode = mode
        self.k = k
        if mode == 'mlp':
            self.W1 = store.param(prefix + '.W1', (k, k))
            self.W2 = store.param(prefix + '.W2', (k, k))
            self.w = store.param(prefix + '.w', (k,), decay=True)


class GlobalAttnParams(object):
    """Parameters W^GA_1, W^GA_2 and the scoring function."""

    def __init__(self, store, prefix, k, score_mode='mlp'):
        self.W1 = store.param(prefix + '.W1', (k, k))
        self.W2 = store.param(prefix + '.W2', (k, k))
        self.score = ScoreParams(store, prefix + '.score', k, score_mode)


class TreeAttnParams(object):
    """Parameters W^TA_1 and the scoring function."""

    def __init__(self, store, prefix, k, score_mode='mlp'):
        self.W1 = store.param(prefix + '.W1', (k, k))
        self.score = ScoreParams(store, prefix + '.score', k, score_mode)


def _check_query(S, q):
    if S.ndim != 2 or q.ndim != 1 or S.shape[0] != q.shape[0]:
        raise ShapeError("score: shape mismatch S%s vs q%s"
                         % (S.shape, q.shape))


def score(S, q, p):
    u"""Score every column of ``S[k×d]`` against the query ``q[k]``.

    mlp:       m = wᵀ·ReLU(W1·S + W2·(q ⊗ e))
    bilinear:  m = qᵀ·S
    """
    _check_query(S, q)
    if p.mode == 'bilinear':
        return F.matmul(F.transpose(S), q)
    d = S.shape[1]
    hidden = F.relu(F.add(F.matmul(p.W1, S),
                          F.outer_broadcast(F.matmul(p.W2, q), d)))
    return F.matmul(F.transpose(hidden), p.w)


def attend(S, q, p):
    """Softmax-normalized blend of the columns of `S` with respect to `q`.

    Return an :class:`AttentionResult` without output transformation.
    """
    alpha = F.softmax(score(S, q, p))
    z = F.matmul(S, alpha)
    return AttentionResult(alpha, z, None)


def global_attention(node_h, q, p):
    """Blend all tree nodes into one vector h^tree.

    :parameters:
        :node_h: matrix tensor ``[k×(2n−1)]`` or list of node vectors,
                 ordered by node id
        :q:      query vector ``[k]``
        :p:      :class:`GlobalAttnParams`
    """
    S = node_h if not isinstance(node_h, (list, tuple)) else \
        F.concat_columns(node_h)
    res = attend(S, q, p.score)
    out = F.relu(F.add(F.matmul(p.W1, res.blended), F.matmul(p.W2, q)))
    return AttentionResult(res.weights, res.blended, out)


def tree_attention(t, node_h, q, p):
    """Update every non-leaf node attentively, bottom-up.

    Each non-leaf node forms ``S = [h^p h^l h^r]`` from its current value and
    the already updated values of its children, and is overwritten with
    ``ReLU(W^TA_1·z)``. A single-leaf tree is returned unchanged.

    :parameters:
        :t:      :class:`TreeTopology`
        :node_h: list of node vectors indexed by node id
        :q:      query vector ``[k]``
        :p:      :class:`TreeAttnParams`
    """
    if len(node_h) != t.n_nodes:
        raise ShapeError("tree_attention: %d node vectors for %d nodes"
                         % (len(node_h), t.n_nodes))
    states = list(node_h)
    weights = {}
    for node in t.internal_nodes():
        l, r = t.children(node)
        S = F.concat_columns([states[node], states[l], states[r]])
        res = attend(S, q, p.score)
        states[node] = F.relu(F.matmul(p.W1, res.blended))
        weights[node] = res.weights
    return TreeAttentionResult(states, states[t.root], weights)
