# -*- coding: utf-8 -*-
import numpy as np
import pytest

from nti.data.records import sentence
from nti.optimize.metrics import accuracy, rank, average_precision, \
    reciprocal_rank, map_mrr, cosine_similarity, nearest_neighbors, \
    padding_size, padding_buckets, accuracy_by_padding, evaluate_accuracy


def test_accuracy():
    assert accuracy([0, 1, 2, 2], [0, 1, 1, 2]) == 0.75
    with pytest.raises(ValueError):
        accuracy([], [])
    with pytest.raises(ValueError):
        accuracy([1], [1, 2])


def test_rank_is_stable():
    assert rank([0.5, 0.9, 0.5, 0.1]) == [1, 0, 2, 3]
    assert rank([1.0, 1.0, 1.0]) == [0, 1, 2]


def test_ranked_list_metrics():
    assert average_precision([0, 1, 0, 1]) == 0.5
    assert reciprocal_rank([0, 1, 0, 1]) == 0.5
    assert average_precision([1, 1, 0]) == 1.0
    assert average_precision([0, 0]) == 0.0 and reciprocal_rank([0]) == 0.0


def test_map_mrr_hand_cases():
    assert map_mrr([([0.5, 0.9, 0.1], [1, 0, 0])]) == (0.5, 0.5)
    assert abs(map_mrr([([0.9, 0.1, 0.5], [1, 1, 0])])[0] - 5.0 / 6) < 1e-15
    assert map_mrr([([0.9, 0.1], [1, 0]), ([0.2, 0.3], [0, 1])]) == \
        (1.0, 1.0)


def test_map_mrr_excludes_queries_without_answers():
    m, r = map_mrr([([0.9, 0.1, 0.5], [0, 1, 1]), ([0.2, 0.8], [0, 0])])
    assert abs(m - 7.0 / 12) < 1e-15
    assert r == 0.5
    with pytest.raises(ValueError):
        map_mrr([([0.2, 0.8], [0, 0])])
    with pytest.raises(ValueError):
        map_mrr([([0.2], [0, 1])])


def brute_force(groups):
    aps, rrs = [], []
    for scores, relevance in groups:
        relevant = [i for i, r in enumerate(relevance) if r]
        if not relevant:
            continue
        order = list(np.argsort(-np.asarray(scores), kind='mergesort'))
        position = dict((i, order.index(i) + 1) for i in range(len(scores)))
        precisions = []
        for i in relevant:
            above = [j for j in relevant if position[j] <= position[i]]
            precisions.append(len(above) / float(position[i]))
        aps.append(np.mean(precisions))
        rrs.append(1.0 / min(position[i] for i in relevant))
    return np.mean(aps), np.mean(rrs)


def test_map_mrr_against_brute_force():
    rng = np.random.RandomState(0)
    for _ in range(100):
        groups = []
        for _ in range(rng.randint(1, 6)):
            d = rng.randint(1, 8)
            scores = list(rng.randint(0, 4, size=d) / 4.0)
            relevance = list(rng.randint(0, 2, size=d))
            groups.append((scores, relevance))
        if not any(any(rel) for _, rel in groups):
            continue
        m, r = map_mrr(groups)
        bm, br = brute_force(groups)
        assert abs(m - bm) < 1e-12 and abs(r - br) < 1e-12


def test_cosine_and_neighbors():
    assert cosine_similarity(np.array([1.0, 0.0]), np.zeros(2)) == 0.0
    assert abs(cosine_similarity(np.array([1.0, 1.0]),
                                 np.array([2.0, 2.0])) - 1.0) < 1e-15
    vectors = [np.array(v) for v in ([0.0, 1.0], [2.0, 0.0], [1.0, 1.0],
                                     [0.0, 0.0])]
    top = nearest_neighbors(np.array([1.0, 0.0]), vectors, top=2)
    assert [i for i, _ in top] == [1, 2]
    assert abs(top[1][1] - np.sqrt(0.5)) < 1e-15
    assert [i for i, _ in nearest_neighbors(np.array([1.0, 0.0]),
                                            vectors)] == [1, 2, 0, 3]
    with pytest.raises(ValueError):
        nearest_neighbors(np.ones(2), [])


@pytest.mark.parametrize("n,pad", [(1, 0), (3, 1), (4, 0), (5, 3), (9, 7)])
def test_padding_size(n, pad):
    assert padding_size(n) == pad


class LengthModel(object):
    """Predicts 1 for sentences of even length."""

    def predict_label(self, ex):
        return int(len(ex.tokens) % 2 == 0)

    def target(self, ex):
        return ex.label


def test_accuracy_by_padding():
    examples = [sentence([u'a'] * n, label) for n, label in
                [(1, 0), (2, 1), (3, 1), (3, 0), (4, 0), (5, 0), (6, 1)]]
    buckets = padding_buckets(examples)
    assert list(buckets) == [0, 1, 2, 3]
    result = accuracy_by_padding(LengthModel(), examples)
    assert result[0] == (3, 2.0 / 3)
    assert result[1] == (2, 0.5)
    assert result[2] == (1, 1.0)
    assert result[3] == (1, 1.0)
    assert evaluate_accuracy(LengthModel(), examples) == 5.0 / 7
    with pytest.raises(ValueError):
        evaluate_accuracy(LengthModel(), [])
