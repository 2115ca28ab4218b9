# -*- coding: utf-8 -*-
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nti.ad import functions as F
from nti.model.attention import ScoreParams, GlobalAttnParams, \
    TreeAttnParams, score, attend, global_attention, tree_attention
from nti.model.params import ParamStore
from nti.tree.topology import build_full_binary_tree
from nti.tools.dercheck import finite_difference_check
from nti.tools.exceptions import ShapeError

from helper import randomize, vec, relu, s, softmax, scalar_score


@pytest.fixture(params=['mlp', 'bilinear'])
def mode(request):
    return request.param


def test_bilinear_score_example():
    p = ScoreParams(ParamStore(), 'sc', 2, 'bilinear')
    S = F.concat_columns([vec([1.0, 0.0]), vec([0.0, 1.0])])
    assert np.allclose(score(S, vec([2.0, 3.0]), p).data, [2.0, 3.0])


def test_mlp_score_zero_vector():
    store = ParamStore()
    p = ScoreParams(store, 'sc', 3)
    store.fill(0.0)
    S = F.concat_columns([vec(np.ones(3))] * 4)
    assert np.array_equal(score(S, vec(np.ones(3)), p).data, np.zeros(4))


def test_score_shape_error(mode):
    p = ScoreParams(ParamStore(), 'sc', 2, mode)
    with pytest.raises(ShapeError):
        score(F.concat_columns([vec([1.0, 2.0])]), vec([1.0, 2.0, 3.0]), p)


def test_global_attention_matches_scalar_equations(mode):
    store = ParamStore()
    p = GlobalAttnParams(store, 'ga', 1, mode)
    for draw in range(100):
        rng = randomize(store, draw)
        nodes = list(rng.normal(size=7))
        q = rng.normal()
        res = global_attention([vec([x]) for x in nodes], vec([q]), p)
        alpha = softmax(scalar_score(nodes, q, p.score))
        z = sum(a * x for a, x in zip(alpha, nodes))
        out = relu(s(p.W1) * z + s(p.W2) * q)
        assert np.allclose(res.weights.data, alpha, atol=1e-12, rtol=0)
        assert abs(res.output.item() - out) < 1e-12


def test_tree_attention_matches_scalar_equations(mode):
    store = ParamStore()
    p = TreeAttnParams(store, 'ta', 1, mode)
    t = build_full_binary_tree(4)
    for draw in range(100):
        rng = randomize(store, draw)
        h = list(rng.normal(size=t.n_nodes))
        q = rng.normal()
        res = tree_attention(t, [vec([x]) for x in h], vec([q]), p)
        for node in t.internal_nodes():
            l, r = t.children(node)
            cols = [h[node], h[l], h[r]]
            alpha = softmax(scalar_score(cols, q, p.score))
            h[node] = relu(s(p.W1) * sum(a * x for a, x in zip(alpha, cols)))
        assert abs(res.output.item() - h[t.root]) < 1e-12
        assert np.allclose([v.item() for v in res.states], h,
                           atol=1e-12, rtol=0)


def test_global_attention_identical_nodes_uniform(mode):
    store = ParamStore()
    p = GlobalAttnParams(store, 'ga', 3, mode)
    randomize(store, 4)
    h = vec([0.1, -0.2, 0.3])
    res = global_attention([h] * 7, vec([0.5, 0.5, 0.5]), p)
    assert np.allclose(res.weights.data, np.full(7, 1.0 / 7))
    assert np.allclose(res.blended.data, h.data)


def test_global_attention_zero_weights():
    store = ParamStore()
    p = GlobalAttnParams(store, 'ga', 2)
    store.fill(0.0)
    res = global_attention([vec([1.0, 2.0]), vec([3.0, 4.0]),
                            vec([5.0, 6.0])], vec([1.0, 1.0]), p)
    assert np.allclose(res.weights.data, np.full(3, 1.0 / 3))
    assert np.array_equal(res.output.data, [0.0, 0.0])


def test_permuting_memory_permutes_weights(mode):
    store = ParamStore()
    p = GlobalAttnParams(store, 'ga', 3, mode)
    for draw in range(20):
        rng = randomize(store, draw)
        nodes = [vec(rng.normal(size=3)) for _ in range(7)]
        q = vec(rng.normal(size=3))
        perm = rng.permutation(7)
        w = global_attention(nodes, q, p).weights.data
        w_perm = global_attention([nodes[j] for j in perm], q, p).weights.data
        assert np.allclose(w_perm, w[perm], atol=1e-12, rtol=0)
        assert perm[np.argmax(w_perm)] == np.argmax(w)


def test_tree_attention_single_leaf():
    store = ParamStore()
    p = TreeAttnParams(store, 'ta', 2)
    t = build_full_binary_tree(1)
    h = vec([0.3, -0.4])
    res = tree_attention(t, [h], vec([1.0, 0.0]), p)
    assert res.output is h and res.weights == {}


def test_tree_attention_counts_local_steps():
    store = ParamStore()
    p = TreeAttnParams(store, 'ta', 2)
    t = build_full_binary_tree(8)
    res = tree_attention(t, [vec([0.1, 0.2])] * t.n_nodes, vec([1.0, 1.0]), p)
    assert sorted(res.weights) == t.internal_nodes()
    assert all(w.shape == (3,) for w in res.weights.values())


def test_tree_attention_node_count_mismatch():
    p = TreeAttnParams(ParamStore(), 'ta', 2)
    with pytest.raises(ShapeError):
        tree_attention(build_full_binary_tree(2), [vec([0.0, 0.0])],
                       vec([0.0, 0.0]), p)


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6),
       st.integers(min_value=1, max_value=9),
       st.floats(min_value=-20, max_value=20))
def test_attention_weights_are_distributions(seed, d, shift):
    store = ParamStore(seed=seed)
    p = ScoreParams(store, 'sc', 3, 'bilinear')
    rng = np.random.RandomState(seed)
    S = F.concat_columns([vec(rng.normal(size=3)) for _ in range(d)])
    q = vec(rng.normal(size=3))
    alpha = attend(S, q, p).weights.data
    assert abs(alpha.sum() - 1.0) < 1e-6
    shifted = F.softmax(F.shift(score(S, q, p), shift)).data
    assert np.allclose(alpha, shifted, atol=1e-9, rtol=0)


@pytest.mark.parametrize("which", ['global', 'tree'])
def test_attention_gradients(which, mode):
    store = ParamStore(seed=1)
    t = build_full_binary_tree(4)
    if which == 'global':
        p = GlobalAttnParams(store, 'ga', 4, mode)
    else:
        p = TreeAttnParams(store, 'ta', 4, mode)
    randomize(store, 1, scale=0.5)
    rng = np.random.RandomState(9)
    h = [vec(rng.normal(size=4)) for _ in range(t.n_nodes)]
    q = vec(rng.normal(size=4))
    w = vec(rng.normal(size=4))

    def f():
        if which == 'global':
            out = global_attention(h, q, p).output
        else:
            out = tree_attention(t, h, q, p).output
        return F.total(F.mul(out, w))

    assert finite_difference_check(f, store) < 1e-4
