# -*- coding: utf-8 -*-
"""A simple derivative checker for scalar functions of tensors."""

import numpy as np

from nti.ad.tensor import Graph, backward
from nti.tools.exceptions import NonFiniteValueError
from nti.tools.logs import get_logger


def _named_tensors(params):
    """Return a list of (name, tensor) pairs from a store, dict or list."""
    if hasattr(params, 'items'):
        return list(params.items())
    out = []
    for i, t in enumerate(params):
        out.append((t.name if t.name is not None else str(i), t))
    return out


RELATIVE_FLOOR = 1.0e-8


def relative_error(analytic, numeric):
    """Symmetric relative discrepancy |a − n| / max(1e-8, |a| + |n|).

    Small gradients are compared relative to their own magnitude; two values
    that both vanish give zero.
    """
    scale = max(RELATIVE_FLOOR, abs(analytic) + abs(numeric))
    return abs(analytic - numeric) / scale


class DerivativeChecker(object):
    """Verify numerically the gradient of a scalar tensor function.

    The function is evaluated with the current values of the parameters and
    must rebuild its graph at every call (define-by-run).
    """

    def __init__(self, func, params, **kwargs):
        u"""Initialize a :class:`DerivativeChecker` instance.

        :parameters:
            :func:   callable with no argument returning a scalar `Tensor`
            :params: `ParamStore`, dict or list of tensors requiring gradients

        :keywords:
            :tol:         tolerance under which derivatives are considered
                          accurate (default: 1.0e-4)
            :step:        centered finite difference step (default: 1.0e-5)
            :max_coords:  check at most this many randomly chosen coordinates
                          per parameter (default: all)
            :seed:        seed of the coordinate sampler (default: 0)
            :logger_name: name of a logger object (default: 'nti.der')
        """
        self.tol = kwargs.get('tol', 1.0e-4)
        self.step = kwargs.get('step', 1.0e-5)
        if self.step <= 0:
            raise ValueError("finite difference step must be positive")
        self.max_coords = kwargs.get('max_coords', None)
        self.rng = np.random.RandomState(kwargs.get('seed', 0))

        self.log = get_logger(kwargs.get('logger_name', 'nti.der'))

        self.func = func
        self.params = _named_tensors(params)
        self.grad_errs = {}
        self.cheap_grad_errs = {}
        self.max_rel_err = 0.0
        self.ncoords = 0

        headfmt = '%-24s  %6s  %22s  %22s  %7s'
        self.head = headfmt % ('Param', 'Index', 'Expected',
                               'Finite Diff', 'Rel.Err')
        self.d1fmt = '%-24s  %6d  %22.15e  %22.15e  %7.1e'
        head3fmt = '%17s %22s  %22s  %7s'
        self.head3 = head3fmt % ('Directional Deriv', 'Expected',
                                 'Finite Diff', 'Rel.Err')
        self.d3fmt = '%17s %22.15e  %22.15e  %7.1e'

    def _value(self):
        v = self.func().item()
        if not np.isfinite(v):
            raise NonFiniteValueError("function value is not finite")
        return v

    def analytic_gradient(self):
        """Evaluate the function once and back-propagate.

        Return a list of gradient arrays aligned with ``self.params``.
        """
        for _, t in self.params:
            t.zero_grad()
        loss = self.func()
        tensors = [t for _, t in self.params]
        grads = backward(loss, Graph.trace(loss), leaves=tensors)
        return [grads[id(t)].copy() for t in tensors]

    def check(self, **kwargs):
        """Perform derivative check.

        :keywords:
            :cheap_check: check the directional derivative along a random
                          direction instead of every coordinate
                          (default `False`)
        """
        self.log.debug('Tolerance: %8.2e', self.tol)
        if kwargs.get('cheap_check', False):
            self.cheap_grad_errs = self.cheap_check_gradient()
        else:
            self.grad_errs = self.check_gradient()
        return self.max_rel_err

    def _coordinates(self, size):
        if self.max_coords is None or size <= self.max_coords:
            return range(size)
        return sorted(self.rng.choice(size, self.max_coords, replace=False))

    def check_gradient(self):
        """Check the gradient using centered finite differences.

        Return a dictionary of (parameter name, flat index) pairs for which
        the scaled error exceeds ``self.tol``.
        """
        grads = self.analytic_gradient()
        errs = {}
        self.max_rel_err = 0.0
        self.ncoords = 0

        self.log.debug('Gradient')
        self.log.debug(self.head)

        for (name, t), g in zip(self.params, grads):
            flat = t.data.reshape(-1)
            gflat = g.reshape(-1)
            for i in self._coordinates(flat.size):
                xi = flat[i]
                flat[i] = xi + self.step
                fph = self._value()
                flat[i] = xi - self.step
                fmh = self._value()
                flat[i] = xi
                dfdxi = (fph - fmh) / (2 * self.step)
                err = relative_error(gflat[i], dfdxi)
                self.max_rel_err = max(self.max_rel_err, err)
                self.ncoords += 1

                line = self.d1fmt % (name, i, gflat[i], dfdxi, err)
                if err > self.tol:
                    self.log.warning(line)
                    errs[(name, i)] = err
                else:
                    self.log.debug(line)

        return errs

    def cheap_check_gradient(self):
        """Check the derivative along a random direction.

        Return a dictionary holding the direction and error when the scaled
        error exceeds ``self.tol``.
        """
        grads = self.analytic_gradient()
        dirs = [self.rng.standard_normal(t.shape) for _, t in self.params]
        nrm = np.sqrt(sum(np.sum(d * d) for d in dirs))
        dirs = [d / nrm for d in dirs]
        gtd = sum(float(np.sum(g * d)) for g, d in zip(grads, dirs))

        saved = [t.data.copy() for _, t in self.params]
        for (_, t), d in zip(self.params, dirs):
            t.data += self.step * d
        fph = self._value()
        for (_, t), x, d in zip(self.params, saved, dirs):
            t.data[...] = x - self.step * d
        fmh = self._value()
        for (_, t), x in zip(self.params, saved):
            t.data[...] = x
        dfdx = (fph - fmh) / (2 * self.step)
        err = relative_error(gtd, dfdx)
        self.max_rel_err = err

        errs = {}
        self.log.debug('Directional derivative')
        self.log.debug(self.head3)
        line = self.d3fmt % ('', gtd, dfdx, err)
        if err > self.tol:
            self.log.warning(line)
            errs['dir'] = dirs
            errs['err'] = err
        else:
            self.log.debug(line)
        return errs


def finite_difference_check(f, params, eps=1.0e-5, **kwargs):
    """Return the largest relative gradient error of `f` over `params`.

    Central differences ``(f(p+eps) − f(p−eps)) / (2·eps)`` are compared
    coordinate by coordinate with the gradient computed by :func:`backward`.
    Extra keywords are passed to :class:`DerivativeChecker`.
    """
    checker = DerivativeChecker(f, params, step=eps, **kwargs)
    return checker.check()
