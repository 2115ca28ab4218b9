# -*- coding: utf-8 -*-
"""Binary checkpoint files.

Layout, all integers little-endian::

    magic      8 bytes   b"NTICKPT\\0"
    version    uint32
    meta       uint32 length + UTF-8 JSON (configuration record)
    count      uint32
    count × {  uint16 name length, UTF-8 name, uint8 ndim,
               ndim × uint32 dims, float64 payload in row-major order }
    digest     20 bytes  SHA-1 of everything above
"""

import hashlib
import io
import json
import os
import struct
from collections import OrderedDict

import numpy as np

from nti.tools.exceptions import CheckpointError

__docformat__ = 'restructuredtext'

MAGIC = b'NTICKPT\x00'
VERSION = 1
_DIGEST_SIZE = 20


def dumps(values, meta):
    """Serialize named arrays and a JSON-compatible meta record."""
    buf = io.BytesIO()
    buf.write(MAGIC)
    buf.write(struct.pack('<I', VERSION))
    blob = json.dumps(meta, sort_keys=True).encode('utf-8')
    buf.write(struct.pack('<I', len(blob)))
    buf.write(blob)
    buf.write(struct.pack('<I', len(values)))
    for name, value in values.items():
        value = np.asarray(value, dtype='<f8')
        key = name.encode('utf-8')
        buf.write(struct.pack('<H', len(key)))
        buf.write(key)
        buf.write(struct.pack('<B', value.ndim))
        buf.write(struct.pack('<%dI' % value.ndim, *value.shape))
        buf.write(np.ascontiguousarray(value).tobytes())
    payload = buf.getvalue()
    return payload + hashlib.sha1(payload).digest()


class _Reader(object):

    def __init__(self, data):
        self.data = data
        self.pos = 0

    def take(self, n):
        if self.pos + n > len(self.data):
            raise CheckpointError("checkpoint is truncated")
        out = self.data[self.pos:self.pos + n]
        self.pos += n
        return out

    def unpack(self, fmt):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))


def loads(data):
    """Inverse of :func:`dumps`; return ``(meta, values)``."""
    if len(data) < len(MAGIC) + _DIGEST_SIZE or \
            not data.startswith(MAGIC):
        raise CheckpointError("not a checkpoint file")
    payload, digest = data[:-_DIGEST_SIZE], data[-_DIGEST_SIZE:]
    if hashlib.sha1(payload).digest() != digest:
        raise CheckpointError("checkpoint digest mismatch (corrupt file)")
    r = _Reader(payload)
    r.take(len(MAGIC))
    version, = r.unpack('<I')
    if version != VERSION:
        raise CheckpointError("unsupported checkpoint version %d" % version)
    size, = r.unpack('<I')
    try:
        meta = json.loads(r.take(size).decode('utf-8'))
    except ValueError as exc:
        raise CheckpointError("unreadable configuration record: %s" % exc)
    count, = r.unpack('<I')
    values = OrderedDict()
    for _ in range(count):
        n, = r.unpack('<H')
        name = r.take(n).decode('utf-8')
        ndim, = r.unpack('<B')
        shape = r.unpack('<%dI' % ndim)
        nbytes = 8 * int(np.prod(shape, dtype=np.int64))
        values[name] = np.frombuffer(r.take(nbytes),
                                     dtype='<f8').reshape(shape).copy()
    if r.pos != len(payload):
        raise CheckpointError("trailing bytes after the last parameter")
    return meta, values


def save_checkpoint(path, params, meta):
    """Write the values of the `ParamStore` `params` with `meta` to `path`.

    The file is written next to `path` first and moved into place.
    """
    data = dumps(params.snapshot(), meta)
    tmp = path + '.tmp'
    with open(tmp, 'wb') as fp:
        fp.write(data)
    os.replace(tmp, path)


def load_checkpoint(path):
    """Read ``(meta, values)`` from `path`."""
    try:
        with open(path, 'rb') as fp:
            data = fp.read()
    except IOError as exc:
        raise CheckpointError("cannot read checkpoint %s: %s" % (path, exc))
    return loads(data)


def restore_params(params, values):
    """Copy checkpoint `values` into `params` after checking names and
    shapes."""
    missing = [n for n in params.names() if n not in values]
    extra = [n for n in values if n not in params]
    if missing or extra:
        raise CheckpointError("checkpoint does not match the model: "
                              "missing %s, unexpected %s"
                              % (missing or 'none', extra or 'none'))
    for name, value in values.items():
        if params[name].shape != value.shape:
            raise CheckpointError("parameter %s has shape %s in the model "
                                  "and %s in the checkpoint"
                                  % (name, params[name].shape, value.shape))
    params.restore(values)
