# -*- coding: utf-8 -*-
import io
import os

import numpy as np
import pytest

from nti.data.embeddings import DEFAULT_DIM, EmbeddingTable, \
    load_embeddings, random_embeddings
from nti.data.vocab import Vocabulary
from nti.tools.exceptions import DataFormatError, ShapeError

this_path = os.path.dirname(os.path.realpath(__file__))
EMBEDDINGS = os.path.join(this_path, 'fixtures', 'embeddings.txt')


@pytest.fixture
def vocab():
    return Vocabulary([u'good', u'movie', u'plot', u'missing'])


def test_reserved_entries():
    v = Vocabulary()
    assert len(v) == 2
    assert v.index(Vocabulary.PAD) == 0
    assert v.index(u'anything') == Vocabulary.OOV_INDEX
    assert v.token(1) == u'<unk>'


def test_vocabulary_is_bijective(vocab):
    for i, token in enumerate(vocab.tokens):
        assert vocab.index(token) == i and vocab.token(i) == token
    assert vocab.add(u'movie') == 3
    assert len(vocab) == 6
    assert vocab.encode([u'plot', u'zebra']) == [4, 1]


def test_build_counts_and_case():
    v = Vocabulary.build([[u'The', u'cat'], [u'the', u'dog', u'cat']],
                         lowercase=True, min_count=2)
    assert v.tokens == [u'<pad>', u'<unk>', u'the', u'cat']
    assert u'THE' in v and u'dog' not in v
    assert v == Vocabulary([u'the', u'cat'], lowercase=True)
    assert v != Vocabulary([u'the', u'cat'])


def test_load_embeddings(vocab):
    emb = load_embeddings(EMBEDDINGS, vocab)
    assert emb.dim == 3 and len(emb) == len(vocab)
    assert np.array_equal(emb.lookup([u'good'])[0], [0.1, 0.2, 0.3])
    assert np.array_equal(emb.lookup([u'plot'])[0], [0.25, -0.25, 0.2])
    assert np.array_equal(emb.lookup([u'missing', u'zebra']), np.zeros((2, 3)))
    assert np.array_equal(emb.matrix[Vocabulary.PAD_INDEX], np.zeros(3))


def test_embeddings_are_fixed(vocab):
    emb = load_embeddings(EMBEDDINGS, vocab)
    assert not emb.trainable
    with pytest.raises(ValueError):
        emb.matrix[2, 0] = 1.0
    rows = emb.lookup([u'good'])
    rows[0, 0] = 5.0
    assert emb.lookup([u'good'])[0, 0] == 0.1


def test_embedding_errors_carry_line_numbers(vocab, tmpdir):
    path = str(tmpdir.join('bad.txt'))
    with io.open(path, 'w', encoding='utf-8') as fp:
        fp.write(u"good 1 2 3\nmovie 1 2 3\nplot 1 2\n")
    with pytest.raises(DataFormatError) as exc:
        load_embeddings(path, vocab)
    assert exc.value.lineno == 3
    with io.open(path, 'w', encoding='utf-8') as fp:
        fp.write(u"good 1 x 3\n")
    with pytest.raises(DataFormatError):
        load_embeddings(path, vocab)
    with pytest.raises(DataFormatError):
        load_embeddings(EMBEDDINGS, vocab, dim=4)


def test_empty_embedding_file(vocab, tmpdir):
    path = str(tmpdir.join('empty.txt'))
    io.open(path, 'w').close()
    emb = load_embeddings(path, vocab)
    assert emb.dim == DEFAULT_DIM
    assert not emb.matrix.any()


def test_random_embeddings(vocab):
    a = random_embeddings(vocab, 4, seed=3)
    b = random_embeddings(vocab, 4, seed=3)
    assert np.array_equal(a.matrix, b.matrix)
    assert np.all(np.abs(a.matrix) <= 1.0)
    assert not a.matrix[Vocabulary.OOV_INDEX].any()


def test_table_shape_check(vocab):
    with pytest.raises(ShapeError):
        EmbeddingTable(vocab, np.zeros((3, 2)))
