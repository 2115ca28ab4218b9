# -*- coding: utf-8 -*-
"""Classification accuracy and ranking metrics."""

from collections import OrderedDict

import numpy as np

from nti.tree.topology import next_power_of_two

__docformat__ = 'restructuredtext'


def accuracy(predicted, gold):
    """Fraction of equal entries of two label sequences."""
    predicted = list(predicted)
    gold = list(gold)
    if len(predicted) != len(gold):
        raise ValueError("%d predictions for %d labels"
                         % (len(predicted), len(gold)))
    if not gold:
        raise ValueError("accuracy of an empty set")
    return sum(1 for p, g in zip(predicted, gold) if p == g) / float(len(gold))


def rank(scores):
    """Candidate indices by descending score; ties keep candidate order."""
    return sorted(range(len(scores)), key=lambda i: -scores[i])


def average_precision(relevance):
    """Mean of precision@i over the relevant positions of a ranked list."""
    hits = 0
    total = 0.0
    for i, rel in enumerate(relevance, 1):
        if rel:
            hits += 1
            total += hits / float(i)
    return total / hits if hits else 0.0


def reciprocal_rank(relevance):
    """1/position of the first relevant entry of a ranked list (0 if none)."""
    for i, rel in enumerate(relevance, 1):
        if rel:
            return 1.0 / i
    return 0.0


def map_mrr(groups):
    """Mean average precision and mean reciprocal rank.

    :parameters:
        :groups: sequence of ``(scores, relevance)`` pairs, one per query

    Queries without a relevant candidate are excluded from both means.
    """
    aps = []
    rrs = []
    for scores, relevance in groups:
        if len(scores) != len(relevance):
            raise ValueError("%d scores for %d candidates"
                             % (len(scores), len(relevance)))
        if not any(relevance):
            continue
        ranked = [relevance[i] for i in rank(scores)]
        aps.append(average_precision(ranked))
        rrs.append(reciprocal_rank(ranked))
    if not aps:
        raise ValueError("no query has a relevant candidate")
    return float(np.mean(aps)), float(np.mean(rrs))


def evaluate_accuracy(model, examples):
    """Arg-max accuracy of `model` on `examples`."""
    examples = list(examples)
    if not examples:
        raise ValueError("cannot evaluate accuracy on an empty set")
    return accuracy([model.predict_label(ex) for ex in examples],
                    [model.target(ex) for ex in examples])


def evaluate_map_mrr(model, groups):
    """MAP and MRR of `model` scores over per-question candidate lists."""
    return map_mrr([([model.score(p) for p in g], [p.relevance for p in g])
                    for g in groups])


def cosine_similarity(u, v):
    """Cosine of the angle between `u` and `v`; 0 if either is zero."""
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


def nearest_neighbors(query, vectors, top=10):
    """Return ``(index, similarity)`` pairs of the `top` most similar
    `vectors`, by descending cosine similarity; ties keep corpus order."""
    if len(vectors) == 0:
        raise ValueError("the corpus is empty")
    sims = [cosine_similarity(query, v) for v in vectors]
    return [(i, sims[i]) for i in rank(sims)[:top]]


def example_tokens(example):
    """Tokens whose tree padding characterizes `example`."""
    for field in ('tokens', 'premise', 'question'):
        if hasattr(example, field):
            return getattr(example, field)
    raise TypeError("no token field in %r" % (example,))


def padding_size(n_tokens):
    """Number of pad leaves of a balanced tree over `n_tokens` tokens."""
    return next_power_of_two(n_tokens) - n_tokens


def padding_buckets(examples):
    """Group `examples` by padding size, in increasing padding order."""
    buckets = {}
    for ex in examples:
        buckets.setdefault(padding_size(len(example_tokens(ex))),
                           []).append(ex)
    return OrderedDict((pad, buckets[pad]) for pad in sorted(buckets))


def accuracy_by_padding(model, examples):
    """Return an OrderedDict ``padding -> (bucket size, accuracy)``.

    Padding sizes absent from `examples` are absent from the result.
    """
    return OrderedDict((pad, (len(group), evaluate_accuracy(model, group)))
                       for pad, group in padding_buckets(examples).items())
