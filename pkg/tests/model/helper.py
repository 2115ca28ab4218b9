# -*- coding: utf-8 -*-
"""Shared helpers of the model tests."""

import math

import numpy as np

from nti.ad.tensor import Tensor


def randomize(store, seed, scale=1.0):
    """Overwrite every parameter of `store` with normal draws."""
    rng = np.random.RandomState(seed)
    for _, t in store.items():
        t.data[...] = scale * rng.normal(size=t.shape)
    return rng


def vec(values):
    return Tensor(np.asarray(values, dtype=float))


def sig(x):
    return 1.0 / (1.0 + math.exp(-x))


def relu(x):
    return max(x, 0.0)


def s(t):
    """Scalar value of a 1×1 parameter or a length-1 vector."""
    return float(t.data.reshape(-1)[0])


def softmax(values):
    top = max(values)
    e = [math.exp(v - top) for v in values]
    total = sum(e)
    return [x / total for x in e]


def scalar_score(S, q, p):
    """Straight-line k=1 scoring of the columns S against q."""
    if p.mode == 'bilinear':
        return [x * q for x in S]
    return [s(p.w) * relu(s(p.W1) * x + s(p.W2) * q) for x in S]
