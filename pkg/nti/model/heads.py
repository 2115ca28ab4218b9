# -*- coding: utf-8 -*-
"""Task heads: a two-layer MLP over sentence or matching representations.

Every head is ``linear → ReLU → linear`` followed by softmax (NLI, SST) or
a sigmoid (answer selection). The ``*_logits`` functions return the
pre-normalization output used by the losses; the others return the
normalized distribution or probability.
"""

from nti.ad import functions as F
from nti.optimize.regularization import apply_dropout
from nti.tools.exceptions import ConfigError, ShapeError

__docformat__ = 'restructuredtext'

SST_CLASSES = (2, 5)


class HeadParams(object):
    """Weights of a ``n_in → hidden → n_out`` perceptron."""

    def __init__(self, store, prefix, n_in, hidden, n_out):
        self.n_in = n_in
        self.n_out = n_out
        self.W1 = store.param(prefix + '.W1', (hidden, n_in))
        self.b1 = store.param(prefix + '.b1', (hidden,), init='zeros')
        self.W2 = store.param(prefix + '.W2', (n_out, hidden))
        self.b2 = store.param(prefix + '.b2', (n_out,), init='zeros')


def nli_features(h_p, h_h):
    u"""Return ``[h_p; h_h; |h_p − h_h|; h_p ⊙ h_h]`` of length 4k."""
    if h_p.shape != h_h.shape or h_p.ndim != 1:
        raise ShapeError("pair features: shape mismatch %s vs %s"
                         % (h_p.shape, h_h.shape))
    return F.concat([h_p, h_h, F.absolute(F.sub(h_p, h_h)), F.mul(h_p, h_h)])


def mlp_logits(x, p, **kwargs):
    """Apply the perceptron `p` to `x`, with output dropout on `x`.

    :keywords:
        :dropout: rate applied to `x` in training mode (default: 0)
        :train:   training mode flag (default: `False`)
        :rng:     random generator for the dropout mask
    """
    if x.shape != (p.n_in,):
        raise ShapeError("head expects an input of length %d, got %s"
                         % (p.n_in, x.shape))
    x = apply_dropout(x, kwargs.get('dropout', 0.0), kwargs.get('rng'),
                      kwargs.get('train', False))
    hidden = F.relu(F.add(F.matmul(p.W1, x), p.b1))
    return F.add(F.matmul(p.W2, hidden), p.b2)


def nli_logits(h_p, h_h=None, p=None, **kwargs):
    """Logits of the NLI head.

    With two sentence vectors the input is their pair features; with
    ``h_h=None`` the matching vector `h_p` feeds the perceptron directly.
    """
    x = h_p if h_h is None else nli_features(h_p, h_h)
    return mlp_logits(x, p, **kwargs)


def nli_head(h_p, h_h=None, p=None, **kwargs):
    """Distribution over the three inference classes."""
    return F.softmax(nli_logits(h_p, h_h, p, **kwargs))


def qa_logit(h_q, h_a, p, **kwargs):
    """The scalar o^QA over the pair features of question and answer."""
    if p.n_out != 1:
        raise ShapeError("the answer selection head has one output, not %d"
                         % p.n_out)
    return mlp_logits(nli_features(h_q, h_a), p, **kwargs)


def qa_head(h_q, h_a, p, **kwargs):
    """Probability that `h_a` answers `h_q`."""
    return F.sigmoid(qa_logit(h_q, h_a, p, **kwargs))


def check_sst_classes(n_classes):
    if n_classes not in SST_CLASSES:
        raise ConfigError("sentiment heads have 2 or 5 classes, not %r"
                          % (n_classes,))


def sst_logits(root_h, p, n_classes, **kwargs):
    check_sst_classes(n_classes)
    if p.n_out != n_classes:
        raise ShapeError("head has %d outputs for %d classes"
                         % (p.n_out, n_classes))
    return mlp_logits(root_h, p, **kwargs)


def sst_head(root_h, p, n_classes, **kwargs):
    """Sentiment class distribution of a root vector."""
    return F.softmax(sst_logits(root_h, p, n_classes, **kwargs))
