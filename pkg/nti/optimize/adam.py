# -*- coding: utf-8 -*-
"""The Adam stochastic gradient method with bias-corrected moments."""

from collections import OrderedDict

import numpy as np

from nti.tools.exceptions import NonFiniteGradientError, ShapeError
from nti.tools.logs import get_logger

__docformat__ = 'restructuredtext'


class AdamState(object):
    """First and second moment estimates and the step counter."""

    def __init__(self, params, **kwargs):
        """Allocate zero moments mirroring the tensors of `params`.

        :keywords:
            :lr:    learning rate (default: 1.0e-3)
            :beta1: first moment decay (default: 0.9)
            :beta2: second moment decay (default: 0.999)
            :eps:   denominator offset (default: 1.0e-8)
        """
        self.lr = float(kwargs.get('lr', 1.0e-3))
        self.beta1 = float(kwargs.get('beta1', 0.9))
        self.beta2 = float(kwargs.get('beta2', 0.999))
        self.eps = float(kwargs.get('eps', 1.0e-8))
        if self.lr < 0:
            raise ValueError("learning rate must be nonnegative")
        self.m = OrderedDict((n, np.zeros_like(t.data))
                             for n, t in params.items())
        self.v = OrderedDict((n, np.zeros_like(t.data))
                             for n, t in params.items())
        self.t = 0


def adam_step(params, grads, state):
    """Apply one Adam update to `params` in place.

    Every gradient is checked before any parameter or moment changes, so a
    non-finite gradient leaves the model and `state` untouched. Parameters
    without a gradient entry see a zero gradient.

    :parameters:
        :params: `ParamStore`
        :grads:  mapping of parameter names to gradient arrays
        :state:  :class:`AdamState` of `params`
    """
    for name, g in grads.items():
        if name not in state.m:
            raise ShapeError("gradient for unknown parameter %s" % name)
        if np.shape(g) != state.m[name].shape:
            raise ShapeError("gradient of %s has shape %s, not %s"
                             % (name, np.shape(g), state.m[name].shape))
        if not np.all(np.isfinite(g)):
            raise NonFiniteGradientError(name)

    state.t += 1
    b1, b2 = state.beta1, state.beta2
    c1 = 1.0 - b1 ** state.t
    c2 = 1.0 - b2 ** state.t
    for name, t in params.items():
        g = grads.get(name)
        if g is None:
            g = np.zeros_like(t.data)
        m = state.m[name]
        v = state.v[name]
        m *= b1
        m += (1.0 - b1) * g
        v *= b2
        v += (1.0 - b2) * g * g
        t.data -= state.lr * (m / c1) / (np.sqrt(v / c2) + state.eps)


class Adam(object):
    """Adam optimizer bound to one parameter store."""

    def __init__(self, params, **kwargs):
        """Keywords are those of :class:`AdamState` and

        :keywords:
            :logger_name: name of the logger (default: 'nti.adam')
        """
        self.params = params
        self.state = AdamState(params, **kwargs)
        self.logger = get_logger(kwargs.get('logger_name', 'nti.adam'))

    @property
    def t(self):
        return self.state.t

    def step(self, grads):
        """Update the parameters from `grads`; see :func:`adam_step`."""
        try:
            adam_step(self.params, grads, self.state)
        except NonFiniteGradientError as exc:
            self.logger.error("step %d aborted: %s", self.state.t + 1, exc)
            raise
