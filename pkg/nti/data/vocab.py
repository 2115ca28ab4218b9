# -*- coding: utf-8 -*-
"""Token vocabulary with reserved padding and unknown-word entries."""

from collections import Counter

__docformat__ = 'restructuredtext'


class Vocabulary(object):
    """Bijective map between tokens and row indices.

    Index 0 is the padding token and index 1 the out-of-vocabulary token;
    every other token gets the next free index in order of insertion.
    """

    PAD = u'<pad>'
    OOV = u'<unk>'
    PAD_INDEX = 0
    OOV_INDEX = 1

    def __init__(self, tokens=(), lowercase=False):
        """Create a vocabulary holding `tokens`.

        :keywords:
            :lowercase: fold tokens to lower case on insertion and lookup
                        (default: `False`)
        """
        self.lowercase = bool(lowercase)
        self._itos = [self.PAD, self.OOV]
        self._stoi = {self.PAD: self.PAD_INDEX, self.OOV: self.OOV_INDEX}
        for token in tokens:
            self.add(token)

    @classmethod
    def build(cls, sentences, lowercase=False, min_count=1):
        """Collect the tokens of `sentences` seen at least `min_count` times.

        Tokens are inserted in order of first occurrence.
        """
        counts = Counter()
        order = []
        for tokens in sentences:
            for token in tokens:
                if lowercase:
                    token = token.lower()
                if token not in counts:
                    order.append(token)
                counts[token] += 1
        return cls([t for t in order if counts[t] >= min_count],
                   lowercase=lowercase)

    def _key(self, token):
        return token.lower() if self.lowercase else token

    def add(self, token):
        """Insert `token` if absent and return its index."""
        key = self._key(token)
        if key not in self._stoi:
            self._stoi[key] = len(self._itos)
            self._itos.append(key)
        return self._stoi[key]

    def index(self, token):
        return self._stoi.get(self._key(token), self.OOV_INDEX)

    def token(self, index):
        return self._itos[index]

    def encode(self, tokens):
        """List of indices of `tokens`, unknown tokens mapped to OOV."""
        return [self.index(t) for t in tokens]

    @property
    def tokens(self):
        """All entries in index order, reserved entries included."""
        return list(self._itos)

    def __len__(self):
        return len(self._itos)

    def __contains__(self, token):
        return self._key(token) in self._stoi

    def __eq__(self, other):
        return isinstance(other, Vocabulary) and \
            self.lowercase == other.lowercase and self._itos == other._itos

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return "Vocabulary(%d entries, lowercase=%s)" % (len(self),
                                                        self.lowercase)
