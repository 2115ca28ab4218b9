# -*- coding: utf-8 -*-
"""Seeded toy tasks small enough to train on a desk."""

import numpy as np

from nti.data.records import SentencePair, sentence
from nti.tools.exceptions import ConfigError

__docformat__ = 'restructuredtext'

SYNTHETIC_KINDS = ('parity', 'contains_pair', 'length_bucket')
MAX_SYNTHETIC_LEN = 32

_ALPHABETS = {
    'parity': (u'x', u'y', u'z'),
    'contains_pair': (u'a', u'b', u'c', u'd'),
    'length_bucket': (u'a', u'b', u'c', u'd'),
}
_PAIR_ALPHABET = (u'a', u'b', u'c', u'd', u'e', u'f', u'g', u'h')


def parity_label(tokens):
    """1 if ``x`` occurs an odd number of times, else 0."""
    return sum(1 for t in tokens if t == u'x') % 2


def contains_pair_label(tokens):
    """1 if both ``a`` and ``b`` occur, else 0."""
    return int(u'a' in tokens and u'b' in tokens)


def length_bucket_label(tokens, max_len):
    """Quartile of the length over ``1..max_len``, in 0..3."""
    return min(3, 4 * (len(tokens) - 1) // max_len)


def _check(n, max_len):
    if n < 0:
        raise ValueError("number of examples must be nonnegative, got %d" % n)
    if not 1 <= max_len <= MAX_SYNTHETIC_LEN:
        raise ValueError("max_len must lie in 1..%d, got %d"
                         % (MAX_SYNTHETIC_LEN, max_len))


def synthetic_task(kind, seed=0, n=200, max_len=16):
    """Return `n` labeled sentences of the toy task `kind`.

    Lengths are uniform over ``1..max_len`` and tokens uniform over a small
    alphabet. The list depends only on ``(kind, seed, n, max_len)``.
    """
    if kind not in SYNTHETIC_KINDS:
        raise ConfigError("unknown synthetic task %r (choose from %s)"
                          % (kind, ", ".join(SYNTHETIC_KINDS)))
    _check(n, max_len)
    rng = np.random.RandomState(seed)
    alphabet = _ALPHABETS[kind]
    out = []
    for _ in range(n):
        length = rng.randint(1, max_len + 1)
        tokens = [alphabet[i] for i in rng.randint(len(alphabet), size=length)]
        if kind == 'parity':
            label = parity_label(tokens)
        elif kind == 'contains_pair':
            label = contains_pair_label(tokens)
        else:
            label = length_bucket_label(tokens, max_len)
        out.append(sentence(tokens, label))
    return out


def synthetic_task_classes(kind):
    """Number of classes of the toy task `kind`."""
    return 4 if kind == 'length_bucket' else 2


def synthetic_pairs(n=200, seed=0, max_len=8, kind='contains_pair'):
    """Return `n` toy inference pairs.

    The hypothesis entails the premise iff every hypothesis token occurs in
    the premise; otherwise the pair is a contradiction. Both outcomes are
    drawn with equal probability.
    """
    if kind != 'contains_pair':
        raise ConfigError("unknown synthetic pair task %r" % (kind,))
    _check(n, max_len)
    rng = np.random.RandomState(seed)
    out = []
    for _ in range(n):
        length = rng.randint(1, max_len + 1)
        premise = [_PAIR_ALPHABET[i]
                   for i in rng.randint(len(_PAIR_ALPHABET), size=length)]
        h_len = rng.randint(1, length + 1)
        hypothesis = [premise[i] for i in rng.randint(length, size=h_len)]
        absent = [t for t in _PAIR_ALPHABET if t not in premise]
        if absent and rng.uniform() < 0.5:
            hypothesis[rng.randint(h_len)] = absent[rng.randint(len(absent))]
            label = 'contradiction'
        else:
            label = 'entailment'
        out.append(SentencePair(tuple(premise), tuple(hypothesis), label))
    return out
