# -*- coding: utf-8 -*-
"""Named collections of trainable weight matrices and bias vectors."""

from collections import OrderedDict
from math import sqrt

import numpy as np

from nti.ad.tensor import Tensor
from nti.tools.exceptions import ShapeError

__docformat__ = 'restructuredtext'


class ParamStore(object):
    """Ordered collection of named parameter tensors.

    Parameters are registered once, in a deterministic order, and drawn from
    a seeded generator so that a (seed, configuration) pair determines every
    initial value. Registering an existing name returns the existing tensor,
    which is how encoders share ("tie") weights.
    """

    def __init__(self, seed=0, dtype=np.float64):
        """Create an empty store.

        :keywords:
            :seed:  seed of the initialization generator (default: 0)
            :dtype: numpy floating dtype of all parameters (default: double)
        """
        self._params = OrderedDict()
        self._decay = {}
        self.dtype = np.dtype(dtype)
        self.rng = np.random.RandomState(seed)

    def param(self, name, shape, init='uniform', decay=None):
        u"""Register (or fetch) parameter `name` of the given shape.

        :parameters:
            :name:  unique dotted name, e.g. ``"encoder.slstm.W1"``
            :shape: tuple of positive integers

        :keywords:
            :init:  ``'uniform'`` (U[−√(1/fan_in), √(1/fan_in)]), ``'zeros'``,
                    ``'ones'`` or an array of initial values
            :decay: subject to l2 weight decay (default: matrices only)
        """
        shape = tuple(int(s) for s in shape)
        if name in self._params:
            t = self._params[name]
            if t.shape != shape:
                raise ShapeError("parameter %s already has shape %s, not %s"
                                 % (name, t.shape, shape))
            return t

        if isinstance(init, str):
            if init == 'uniform':
                bound = sqrt(1.0 / shape[-1])
                values = self.rng.uniform(-bound, bound, size=shape)
            elif init == 'zeros':
                values = np.zeros(shape)
            elif init == 'ones':
                values = np.ones(shape)
            else:
                raise ValueError("unknown initialization %r" % init)
        else:
            values = np.asarray(init)
            if values.shape != shape:
                raise ShapeError("initial values for %s have shape %s, not %s"
                                 % (name, values.shape, shape))

        t = Tensor(values, requires_grad=True, name=name, dtype=self.dtype)
        self._params[name] = t
        self._decay[name] = (len(shape) == 2) if decay is None else bool(decay)
        return t

    def __getitem__(self, name):
        return self._params[name]

    def __contains__(self, name):
        return name in self._params

    def __iter__(self):
        return iter(self._params)

    def __len__(self):
        return len(self._params)

    def names(self):
        return list(self._params)

    def items(self):
        return list(self._params.items())

    def tensors(self):
        return list(self._params.values())

    def decayed(self):
        """Return the (name, tensor) pairs subject to weight decay."""
        return [(n, t) for n, t in self._params.items() if self._decay[n]]

    @property
    def size(self):
        """Total number of scalar parameters."""
        return sum(t.size for t in self._params.values())

    def zero_grad(self):
        """Reset every gradient slot to zeros."""
        for t in self._params.values():
            t.zero_grad()

    def grads(self):
        """Return an OrderedDict of gradient arrays (zeros if unset)."""
        return OrderedDict(
            (n, t.grad if t.grad is not None else np.zeros_like(t.data))
            for n, t in self._params.items())

    def snapshot(self):
        """Return a deep copy of the current values."""
        return OrderedDict((n, t.data.copy()) for n, t in self._params.items())

    def restore(self, values):
        """Overwrite the current values with those of `values`."""
        for n, v in values.items():
            t = self._params[n]
            if t.shape != np.shape(v):
                raise ShapeError("parameter %s has shape %s, got %s"
                                 % (n, t.shape, np.shape(v)))
            t.data[...] = v

    def fill(self, value, prefix=''):
        """Set every parameter whose name starts with `prefix` to `value`."""
        for n, t in self._params.items():
            if n.startswith(prefix):
                t.data[...] = value
