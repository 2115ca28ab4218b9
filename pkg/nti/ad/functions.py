# -*- coding: utf-8 -*-
"""Differentiable primitives.

Each primitive computes its value with numpy and records the rule mapping
the output gradient ``g`` to the input gradients. Binary elementwise
primitives require identical shapes; the only broadcast is
:func:`outer_broadcast`.
"""

import numpy as np

from nti.ad.tensor import Tensor, as_tensor, record
from nti.tools.exceptions import ShapeError

__docformat__ = 'restructuredtext'


def _check_same_shape(op, a, b):
    if a.shape != b.shape:
        raise ShapeError("%s: shape mismatch %s vs %s"
                         % (op, a.shape, b.shape))


def _sigmoid(x):
    # Stable for large |x|.
    return 0.5 * (1.0 + np.tanh(0.5 * x))


def matmul(a, b):
    """Matrix product of ``a[m×n]`` with ``b[n×p]`` or ``b[n]``.

    Gradients: ``da = g·bᵀ``, ``db = aᵀ·g``.
    """
    a = as_tensor(a)
    b = as_tensor(b)
    if a.ndim != 2 or b.ndim not in (1, 2) or a.shape[1] != b.shape[0]:
        raise ShapeError("matmul: shape mismatch %s x %s" % (a.shape, b.shape))
    value = np.dot(a.data, b.data)

    def vjp(g):
        if b.ndim == 1:
            return np.outer(g, b.data), np.dot(a.data.T, g)
        return np.dot(g, b.data.T), np.dot(a.data.T, g)

    return record("matmul", (a, b), value, vjp)


def transpose(a):
    """Transpose of a matrix."""
    a = as_tensor(a)
    if a.ndim != 2:
        raise ShapeError("transpose expects a matrix, got shape %s"
                         % (a.shape,))
    return record("transpose", (a,), a.data.T.copy(), lambda g: (g.T,))


def add(a, b):
    """Elementwise sum of two tensors of identical shape."""
    a = as_tensor(a)
    b = as_tensor(b)
    _check_same_shape("add", a, b)
    return record("add", (a, b), a.data + b.data, lambda g: (g, g))


def add_n(tensors):
    """Sum a non-empty list of same-shape tensors in list order."""
    tensors = [as_tensor(t) for t in tensors]
    if not tensors:
        raise ShapeError("add_n: empty input")
    for t in tensors[1:]:
        _check_same_shape("add_n", tensors[0], t)
    value = tensors[0].data.copy()
    for t in tensors[1:]:
        value = value + t.data
    return record("add_n", tuple(tensors), value,
                  lambda g: tuple(g for _ in tensors))


def sub(a, b):
    """Elementwise difference of two tensors of identical shape."""
    a = as_tensor(a)
    b = as_tensor(b)
    _check_same_shape("sub", a, b)
    return record("sub", (a, b), a.data - b.data, lambda g: (g, -g))


def mul(a, b):
    """Elementwise (Hadamard) product of two tensors of identical shape."""
    a = as_tensor(a)
    b = as_tensor(b)
    _check_same_shape("mul", a, b)
    return record("mul", (a, b), a.data * b.data,
                  lambda g: (g * b.data, g * a.data))


def scale(a, c):
    """Multiply every entry by the constant `c`."""
    a = as_tensor(a)
    c = float(c)
    return record("scale", (a,), a.data * c, lambda g: (g * c,))


def shift(a, c):
    """Add the constant `c` to every entry."""
    a = as_tensor(a)
    c = float(c)
    return record("shift", (a,), a.data + c, lambda g: (g,))


def sigmoid(a):
    """Elementwise logistic function σ."""
    a = as_tensor(a)
    s = _sigmoid(a.data)
    return record("sigmoid", (a,), s, lambda g: (g * s * (1.0 - s),))


def tanh(a):
    """Elementwise hyperbolic tangent."""
    a = as_tensor(a)
    t = np.tanh(a.data)
    return record("tanh", (a,), t, lambda g: (g * (1.0 - t * t),))


def relu(a):
    """Elementwise max(0, x); the subgradient at 0 is 0."""
    a = as_tensor(a)
    mask = (a.data > 0).astype(a.dtype)
    return record("relu", (a,), a.data * mask, lambda g: (g * mask,))


def absolute(a):
    """Elementwise |x|; the subgradient at 0 is 0."""
    a = as_tensor(a)
    sgn = np.sign(a.data)
    return record("abs", (a,), np.abs(a.data), lambda g: (g * sgn,))


_UNARY = {'sigmoid': sigmoid, 'tanh': tanh, 'relu': relu, 'abs': absolute}
_BINARY = {'add': add, 'sub': sub, 'mul': mul}


def elementwise(op, *inputs):
    """Apply the pointwise operation named `op` to `inputs`.

    `op` is one of ``add``, ``sub``, ``mul`` (two inputs of identical shape)
    or ``sigmoid``, ``tanh``, ``relu``, ``abs`` (one input).
    """
    if op in _BINARY:
        if len(inputs) != 2:
            raise ValueError("%s takes two inputs, got %d" % (op, len(inputs)))
        return _BINARY[op](*inputs)
    if op in _UNARY:
        if len(inputs) != 1:
            raise ValueError("%s takes one input, got %d" % (op, len(inputs)))
        return _UNARY[op](inputs[0])
    raise ValueError("unknown elementwise operation %r" % op)


def softmax(m):
    """Softmax of a score vector, computed with max-subtraction."""
    m = as_tensor(m)
    if m.ndim != 1:
        raise ShapeError("softmax expects a vector, got shape %s" % (m.shape,))
    if m.size == 0:
        raise ShapeError("softmax of an empty vector")
    e = np.exp(m.data - np.max(m.data))
    s = e / np.sum(e)

    def vjp(g):
        return (s * (g - np.dot(g, s)),)

    return record("softmax", (m,), s, vjp)


def concat_columns(tensors):
    """Concatenate ``[k×·]`` blocks column-wise in argument order.

    Vectors of length k are treated as single columns ``[k×1]``.
    """
    tensors = [as_tensor(t) for t in tensors]
    if not tensors:
        raise ShapeError("concat_columns: empty input")
    blocks = [t.data.reshape(-1, 1) if t.ndim == 1 else t.data
              for t in tensors]
    rows = set(b.shape[0] for b in blocks)
    if len(rows) != 1:
        raise ShapeError("concat_columns: row-count mismatch %s"
                         % [t.shape for t in tensors])
    widths = [b.shape[1] for b in blocks]
    bounds = np.cumsum([0] + widths)
    value = np.concatenate(blocks, axis=1)

    def vjp(g):
        out = []
        for t, lo, hi in zip(tensors, bounds[:-1], bounds[1:]):
            gi = g[:, lo:hi]
            out.append(gi.reshape(t.shape))
        return tuple(out)

    return record("concat_columns", tuple(tensors), value, vjp)


def concat(tensors):
    """Concatenate vectors end to end."""
    tensors = [as_tensor(t) for t in tensors]
    if not tensors or any(t.ndim != 1 for t in tensors):
        raise ShapeError("concat expects a non-empty list of vectors, got %s"
                         % [t.shape for t in tensors])
    bounds = np.cumsum([0] + [t.size for t in tensors])
    value = np.concatenate([t.data for t in tensors])

    def vjp(g):
        return tuple(g[lo:hi] for lo, hi in zip(bounds[:-1], bounds[1:]))

    return record("concat", tuple(tensors), value, vjp)


def outer_broadcast(q, count):
    """Replicate the vector `q` across `count` columns (q ⊗ e)."""
    q = as_tensor(q)
    count = int(count)
    if count < 1:
        raise ValueError("outer_broadcast: count must be >= 1, got %d" % count)
    if q.ndim != 1:
        raise ShapeError("outer_broadcast expects a vector, got shape %s"
                         % (q.shape,))
    value = np.repeat(q.data.reshape(-1, 1), count, axis=1)
    return record("outer_broadcast", (q,), value,
                  lambda g: (np.sum(g, axis=1),))


def total(a):
    """Sum of all entries, as a one-element vector."""
    a = as_tensor(a)
    value = np.array([np.sum(a.data)], dtype=a.dtype)
    return record("total", (a,), value,
                  lambda g: (np.full(a.shape, g[0], dtype=a.dtype),))


def cross_entropy(logits, label):
    """Negative log-likelihood of class `label` under softmax(`logits`).

    Computed with the log-sum-exp trick; returns a one-element vector.
    """
    logits = as_tensor(logits)
    if logits.ndim != 1:
        raise ShapeError("cross_entropy expects a logit vector, got %s"
                         % (logits.shape,))
    label = int(label)
    if not 0 <= label < logits.size:
        raise ValueError("label %d out of range for %d classes"
                         % (label, logits.size))
    z = logits.data - np.max(logits.data)
    lse = np.log(np.sum(np.exp(z)))
    value = np.array([lse - z[label]], dtype=logits.dtype)

    def vjp(g):
        p = np.exp(z - lse)
        p[label] -= 1.0
        return (g[0] * p,)

    return record("cross_entropy", (logits,), value, vjp)


def binary_cross_entropy(logit, target):
    """Binary cross-entropy of σ(`logit`) against `target` in {0, 1}.

    Uses ``softplus(o) - y·o`` so large logits do not overflow.
    """
    logit = as_tensor(logit)
    if logit.size != 1:
        raise ShapeError("binary_cross_entropy expects one logit, got %s"
                         % (logit.shape,))
    y = float(target)
    o = logit.data.reshape(-1)
    value = (np.logaddexp(0.0, o) - y * o).astype(logit.dtype)

    def vjp(g):
        return ((g[0] * (_sigmoid(o) - y)).reshape(logit.shape),)

    return record("binary_cross_entropy", (logit,), value, vjp)


def constant(values, dtype=np.float64):
    """Wrap `values` as a tensor that never requires a gradient."""
    return Tensor(np.asarray(values, dtype=dtype))
