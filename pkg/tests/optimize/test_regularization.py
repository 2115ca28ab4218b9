# -*- coding: utf-8 -*-
import numpy as np
import pytest

from nti.ad import functions as F
from nti.ad.tensor import Tensor, backward
from nti.model.params import ParamStore
from nti.optimize.regularization import apply_dropout, l2_penalty


def test_dropout_is_identity_in_evaluation_mode():
    x = Tensor(np.ones(5))
    assert apply_dropout(x, 0.5) is x
    assert apply_dropout(x, 0.0, np.random.RandomState(0), train=True) is x


def test_dropout_preserves_expectation():
    rng = np.random.RandomState(0)
    x = Tensor(np.ones(100000))
    out = apply_dropout(x, 0.5, rng, train=True).data
    assert np.allclose(np.unique(out), [0.0, 2.0])
    assert abs(out.mean() - 1.0) < 0.01
    assert abs((out == 0).mean() - 0.5) < 0.01


def test_dropout_arguments():
    x = Tensor(np.ones(3))
    with pytest.raises(ValueError):
        apply_dropout(x, 1.0)
    with pytest.raises(ValueError):
        apply_dropout(x, -0.1)
    with pytest.raises(ValueError):
        apply_dropout(x, 0.5, None, train=True)


def test_dropout_gradient_follows_mask():
    x = Tensor(np.ones(50), requires_grad=True)
    out = apply_dropout(x, 0.5, np.random.RandomState(1), train=True)
    backward(F.total(out))
    assert np.array_equal(x.grad, out.data)


def test_l2_example():
    s = ParamStore()
    s.param('W', (2, 2), init=np.eye(2))
    s.param('b', (2,), init='ones')
    pen = l2_penalty(s, 1.0)
    assert pen.item() == 2.0
    backward(pen)
    assert np.array_equal(s['W'].grad, 2 * np.eye(2))
    assert s['b'].grad is None


def test_l2_zero_and_negative():
    s = ParamStore()
    s.param('W', (2, 2))
    assert l2_penalty(s, 0.0).item() == 0.0
    with pytest.raises(ValueError):
        l2_penalty(s, -1e-5)


def test_l2_single_weight():
    s = ParamStore()
    s.param('W', (1, 1), init=np.array([[2.0]]))
    assert l2_penalty(s, 0.5).item() == 2.0
