# -*- coding: utf-8 -*-
u"""Node transformation functions of the tree.

* f^leaf: a left-to-right LSTM over the leaf embeddings,
* f^node: the S-LSTM composition of two children (h, c) states,
* f^node: the attentive non-leaf function (ANF) blending two children with
  respect to an external query.

Every gate carries a bias vector. Biases start at zero except the forget
gates, which start at one.
"""

from collections import namedtuple

from nti.ad import functions as F
from nti.model.attention import ScoreParams, attend
from nti.tools.exceptions import ShapeError

__docformat__ = 'restructuredtext'

NodeState = namedtuple('NodeState', ['h', 'c'])
NodeState.__doc__ = "Hidden representation `h` and memory cell `c` of a node."

# Weight indices of the S-LSTM. W17 does not occur in the composition
# equations and is not allocated.
SLSTM_WEIGHTS = tuple(i for i in range(1, 19) if i != 17)


class LeafLstmParams(object):
    """Gate weights over ``[x_t; h_{t−1}]`` and biases of a standard LSTM."""

    def __init__(self, store, prefix, k_in, k):
        self.k_in = k_in
        self.k = k
        shape = (k, k_in + k)
        self.W_i = store.param(prefix + '.W_i', shape)
        self.W_f = store.param(prefix + '.W_f', shape)
        self.W_o = store.param(prefix + '.W_o', shape)
        self.W_c = store.param(prefix + '.W_c', shape)
        self.b_i = store.param(prefix + '.b_i', (k,), init='zeros')
        self.b_f = store.param(prefix + '.b_f', (k,), init='ones')
        self.b_o = store.param(prefix + '.b_o', (k,), init='zeros')
        self.b_c = store.param(prefix + '.b_c', (k,), init='zeros')


class SLstmParams(object):
    u"""S-LSTM weights W^s_1..W^s_18 (W^s_17 unused) and five biases."""

    def __init__(self, store, prefix, k):
        self.k = k
        self.W = dict((i, store.param('%s.W%d' % (prefix, i), (k, k)))
                      for i in SLSTM_WEIGHTS)
        self.b_i = store.param(prefix + '.b_i', (k,), init='zeros')
        self.b_fl = store.param(prefix + '.b_fl', (k,), init='ones')
        self.b_fr = store.param(prefix + '.b_fr', (k,), init='ones')
        self.b_c = store.param(prefix + '.b_c', (k,), init='zeros')
        self.b_o = store.param(prefix + '.b_o', (k,), init='zeros')


class AnfParams(object):
    u"""W^ANF_1 and the scoring parameters of the attentive composition."""

    def __init__(self, store, prefix, k, score_mode='mlp'):
        self.k = k
        self.W1 = store.param(prefix + '.W1', (k, k))
        self.score = ScoreParams(store, prefix + '.score', k, score_mode)


def _affine(terms, bias):
    return F.add_n([F.matmul(W, v) for W, v in terms] + [bias])


def lstm_leaf_step(x_t, prev, p):
    """Advance the leaf LSTM by one token.

    :parameters:
        :x_t:  input vector ``[k_in]``
        :prev: previous :class:`NodeState` (zeros at sequence start)
        :p:    :class:`LeafLstmParams`
    """
    if x_t.shape != (p.k_in,) or prev.h.shape != (p.k,) or \
            prev.c.shape != (p.k,):
        raise ShapeError("lstm_leaf_step: x%s, h%s, c%s for k_in=%d, k=%d"
                         % (x_t.shape, prev.h.shape, prev.c.shape, p.k_in, p.k))
    xh = F.concat([x_t, prev.h])
    i = F.sigmoid(F.add(F.matmul(p.W_i, xh), p.b_i))
    f = F.sigmoid(F.add(F.matmul(p.W_f, xh), p.b_f))
    o = F.sigmoid(F.add(F.matmul(p.W_o, xh), p.b_o))
    g = F.tanh(F.add(F.matmul(p.W_c, xh), p.b_c))
    c = F.add(F.mul(f, prev.c), F.mul(i, g))
    h = F.mul(o, F.tanh(c))
    return NodeState(h, c)


def slstm_gates(left, right, p):
    """Return the S-LSTM gates ``(i, f^l, f^r, o)`` and the new state."""
    for v in (left.h, right.h, left.c, right.c):
        if v.shape != (p.k,):
            raise ShapeError("slstm_compose: child vector of shape %s, k=%d"
                             % (v.shape, p.k))
    W = p.W
    hl, hr, cl, cr = left.h, right.h, left.c, right.c
    i = F.sigmoid(_affine([(W[1], hl), (W[2], hr), (W[3], cl), (W[4], cr)],
                          p.b_i))
    fl = F.sigmoid(_affine([(W[5], hl), (W[6], hr), (W[7], cl), (W[8], cr)],
                           p.b_fl))
    fr = F.sigmoid(_affine([(W[9], hl), (W[10], hr), (W[11], cl),
                            (W[12], cr)], p.b_fr))
    u = F.tanh(_affine([(W[13], hl), (W[14], hr)], p.b_c))
    c = F.add_n([F.mul(fl, cl), F.mul(fr, cr), F.mul(i, u)])
    o = F.sigmoid(_affine([(W[15], hl), (W[16], hr), (W[18], c)], p.b_o))
    h = F.mul(o, F.tanh(c))
    return (i, fl, fr, o), NodeState(h, c)


def slstm_compose(left, right, p):
    """Compose two child states into the parent state with an S-LSTM."""
    return slstm_gates(left, right, p)[1]


def anf_attend(left_h, right_h, q, p):
    """Attention step of the ANF; returns an ``AttentionResult``."""
    for v in (left_h, right_h, q):
        if v.shape != (p.k,):
            raise ShapeError("anf_compose: vector of shape %s, k=%d"
                             % (v.shape, p.k))
    S = F.concat_columns([left_h, right_h])
    res = attend(S, q, p.score)
    out = F.relu(F.matmul(p.W1, res.blended))
    return res._replace(output=out)


def anf_compose(left_h, right_h, q, p):
    """Compose two children attentively with respect to the query `q`."""
    return anf_attend(left_h, right_h, q, p).output
