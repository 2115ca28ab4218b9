# -*- coding: utf-8 -*-
"""Dropout and l2 weight decay."""

import numpy as np

from nti.ad import functions as F
from nti.ad.tensor import Tensor


def apply_dropout(x, rate, rng=None, train=False):
    """Inverted dropout.

    In training mode each coordinate is zeroed with probability `rate` and
    survivors are scaled by 1/(1 − rate); in evaluation mode `x` is returned
    unchanged.

    :parameters:
        :x:    tensor
        :rate: drop probability in [0, 1)

    :keywords:
        :rng:   ``numpy.random.RandomState`` drawing the mask
        :train: training mode flag (default: ``False``)
    """
    if not 0.0 <= rate < 1.0:
        raise ValueError("dropout rate must lie in [0, 1), got %r" % rate)
    if not train or rate == 0.0:
        return x
    if rng is None:
        raise ValueError("training-mode dropout needs a random generator")
    keep = (rng.uniform(size=x.shape) >= rate).astype(x.dtype)
    mask = Tensor(keep / (1.0 - rate), dtype=x.dtype)
    return F.mul(x, mask)


def l2_penalty(params, strength):
    u"""Return strength · Σ‖W‖² over the decayed parameters of `params`.

    Bias vectors are excluded by the store's decay flags; embeddings are not
    parameters at all. The result is a one-element tensor whose gradient
    with respect to W is 2·strength·W.
    """
    if strength < 0:
        raise ValueError("l2 strength must be nonnegative, got %r" % strength)
    terms = [F.total(F.mul(t, t)) for _, t in params.decayed()]
    if strength == 0 or not terms:
        return Tensor(np.zeros(1), dtype=params.dtype)
    return F.scale(F.add_n(terms), strength)
