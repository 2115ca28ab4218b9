# -*- coding: utf-8 -*-
"""Fixed word embeddings.

Embeddings are plain numpy arrays and never take part in optimization. The
rows of the padding and unknown-word entries are zero vectors.
"""

import io

import numpy as np

from nti.tools.exceptions import DataFormatError, ShapeError
from nti.tools.logs import get_logger

__docformat__ = 'restructuredtext'

DEFAULT_DIM = 300


class EmbeddingTable(object):
    """Read-only ``[len(vocab)×dim]`` embedding matrix."""

    trainable = False

    def __init__(self, vocab, matrix):
        matrix = np.array(matrix, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[0] != len(vocab):
            raise ShapeError("embedding matrix of shape %s for %d tokens"
                             % (matrix.shape, len(vocab)))
        matrix[vocab.PAD_INDEX] = 0.0
        matrix[vocab.OOV_INDEX] = 0.0
        matrix.setflags(write=False)
        self.vocab = vocab
        self.matrix = matrix

    @property
    def dim(self):
        return self.matrix.shape[1]

    def lookup(self, tokens):
        """Return a fresh ``[len(tokens)×dim]`` array of embeddings."""
        return self.matrix[self.vocab.encode(tokens)]

    def __len__(self):
        return self.matrix.shape[0]


def load_embeddings(path, vocab, dim=None, **kwargs):
    """Read text-format vectors for the tokens of `vocab`.

    Each non-empty line holds a token followed by `dim` reals, separated by
    whitespace. Tokens of `vocab` absent from the file keep a zero row.
    When several lines share a token the first wins.

    :parameters:
        :path:  embedding file
        :vocab: :class:`Vocabulary`

    :keywords:
        :dim:         vector width (default: inferred from the first line,
                      or 300 for an empty file)
        :logger_name: name of the logger (default: 'nti.data')
    """
    log = get_logger(kwargs.get('logger_name', 'nti.data'))
    rows = {}
    with io.open(path, encoding='utf-8') as fp:
        for lineno, line in enumerate(fp, 1):
            fields = line.split()
            if not fields:
                continue
            if dim is None:
                dim = len(fields) - 1
                if dim < 1:
                    raise DataFormatError("no vector values", path, lineno)
            if len(fields) != dim + 1:
                raise DataFormatError("expected %d fields, got %d"
                                      % (dim + 1, len(fields)), path, lineno)
            token = fields[0]
            if token not in vocab:
                continue
            index = vocab.index(token)
            if index in rows:
                continue
            try:
                rows[index] = np.array([float(v) for v in fields[1:]])
            except ValueError as exc:
                raise DataFormatError(str(exc), path, lineno)

    if dim is None:
        dim = DEFAULT_DIM
    matrix = np.zeros((len(vocab), dim))
    for index, values in rows.items():
        matrix[index] = values
    rows.pop(vocab.PAD_INDEX, None)
    rows.pop(vocab.OOV_INDEX, None)
    log.info("%d of %d tokens found in %s", len(rows), len(vocab) - 2, path)
    return EmbeddingTable(vocab, matrix)


def random_embeddings(vocab, dim, seed=0):
    """Seeded uniform U[−1, 1] embeddings for desk-scale tasks."""
    rng = np.random.RandomState(seed)
    return EmbeddingTable(vocab, rng.uniform(-1.0, 1.0,
                                             size=(len(vocab), dim)))
