# -*- coding: utf-8 -*-
import numpy as np
import pytest

from nti.model.checkpoint import MAGIC, dumps, loads, save_checkpoint, \
    load_checkpoint, restore_params
from nti.model.params import ParamStore
from nti.tools.exceptions import CheckpointError


@pytest.fixture
def store():
    s = ParamStore(seed=5)
    s.param('enc.W', (3, 2))
    s.param('enc.b', (3,), init='zeros')
    s.param('head.w', (1,))
    return s


def test_save_and_load(store, tmpdir):
    path = str(tmpdir.join('model.ckpt'))
    meta = {'variant': 'nti-slstm', 'k': 2, 'vocab': [u'<pad>', u'<unk>']}
    save_checkpoint(path, store, meta)
    assert not tmpdir.join('model.ckpt.tmp').check()
    meta2, values = load_checkpoint(path)
    assert meta2 == meta
    assert list(values) == store.names()
    for name, t in store.items():
        assert np.array_equal(values[name], t.data)


def test_restore_overwrites_values(store):
    _, values = loads(dumps(store.snapshot(), {}))
    other = ParamStore(seed=6)
    for name, t in store.items():
        other.param(name, t.shape)
    restore_params(other, values)
    for name, t in store.items():
        assert np.array_equal(other[name].data, t.data)


def test_meta_is_written_with_sorted_keys(store):
    a = dumps(store.snapshot(), {'b': 1, 'a': 2})
    b = dumps(store.snapshot(), {'a': 2, 'b': 1})
    assert a == b and a.startswith(MAGIC)


def test_corrupt_digest(store):
    data = bytearray(dumps(store.snapshot(), {}))
    data[len(MAGIC) + 6] ^= 0xff
    with pytest.raises(CheckpointError):
        loads(bytes(data))


@pytest.mark.parametrize("data", [b'', b'not a checkpoint at all, no',
                                  MAGIC + b'\x00' * 20])
def test_not_a_checkpoint(data):
    with pytest.raises(CheckpointError):
        loads(data)


def test_missing_file(tmpdir):
    with pytest.raises(CheckpointError):
        load_checkpoint(str(tmpdir.join('absent.ckpt')))


def test_shape_mismatch(store):
    other = ParamStore()
    other.param('enc.W', (2, 3))
    other.param('enc.b', (3,))
    other.param('head.w', (1,))
    with pytest.raises(CheckpointError) as exc:
        restore_params(other, store.snapshot())
    assert 'enc.W' in str(exc.value)


def test_name_mismatch(store):
    other = ParamStore()
    other.param('enc.W', (3, 2))
    with pytest.raises(CheckpointError):
        restore_params(other, store.snapshot())
