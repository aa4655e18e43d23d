"""Binary index archives.

Layout (all integers little-endian)::

    b"ORSTI"  version:u8  kind:u8  flags:u8  nfields:u64
    per field:  namelen:u64 name  type:u8  count:u64  payload

Field types: ``B`` raw bytes (count = byte length), ``A`` integer array
(count = entries; int32 when flag bit 0 is clear, else int64), ``L`` list of
byte strings (count = items, each prefixed by its u64 length) and ``S`` a
UTF-8 string.  Integer arrays use 32-bit entries whenever every stored
array has fewer than 2**31 entries and fits in int32.

An archive stores the raw inputs, the suffix arrays and the build
parameters; everything else is rebuilt on load through the same code path
as a fresh build, so loaded indexes answer queries identically.
"""

import struct

import numpy as np

MAGIC = b"ORSTI"
VERSION = 1

KINDS = ("sa", "docs", "one-error", "lz", "scq", "restricted", "topk", "wanc", "geo")
_KIND_TAG = {k: i + 1 for i, k in enumerate(KINDS)}
_TAG_KIND = {v: k for k, v in _KIND_TAG.items()}

_U64 = struct.Struct("<Q")


class ArchiveError(ValueError):
    pass


def _wide(fields):
    for value in fields.values():
        if isinstance(value, np.ndarray):
            if len(value) >= 2 ** 31:
                return True
            if len(value) and (value.max() >= 2 ** 31 or value.min() < -2 ** 31):
                return True
    return False


def dumps(kind, fields):
    if kind not in _KIND_TAG:
        raise ArchiveError(f"unknown index kind {kind!r}")
    wide = _wide(fields)
    out = bytearray(MAGIC)
    out += bytes([VERSION, _KIND_TAG[kind], 1 if wide else 0])
    out += _U64.pack(len(fields))
    for name, value in fields.items():
        raw = name.encode()
        out += _U64.pack(len(raw)) + raw
        if isinstance(value, (bytes, bytearray)):
            out += b"B" + _U64.pack(len(value)) + bytes(value)
        elif isinstance(value, np.ndarray):
            arr = value.astype("<i8" if wide else "<i4")
            out += b"A" + _U64.pack(len(arr)) + arr.tobytes()
        elif isinstance(value, list):
            out += b"L" + _U64.pack(len(value))
            for item in value:
                out += _U64.pack(len(item)) + bytes(item)
        elif isinstance(value, str):
            raw = value.encode()
            out += b"S" + _U64.pack(len(raw)) + raw
        else:
            raise ArchiveError(f"field {name!r}: unsupported type {type(value).__name__}")
    return bytes(out)


class _Reader:
    def __init__(self, data):
        self.data = data
        self.pos = 0

    def take(self, size):
        if size < 0 or self.pos + size > len(self.data):
            raise ArchiveError("truncated archive")
        chunk = self.data[self.pos: self.pos + size]
        self.pos += size
        return chunk

    def u64(self):
        return _U64.unpack(self.take(8))[0]


def loads(data):
    """``(kind, fields)`` from archive bytes."""
    if data[:5] != MAGIC:
        raise ArchiveError("not an index archive (bad magic)")
    if len(data) < 8:
        raise ArchiveError("truncated archive")
    version, tag, flags = data[5], data[6], data[7]
    if version != VERSION:
        raise ArchiveError(f"unsupported archive version {version}")
    if tag not in _TAG_KIND:
        raise ArchiveError(f"unknown index kind tag {tag}")
    width = 8 if flags & 1 else 4
    rd = _Reader(data)
    rd.pos = 8
    fields = {}
    for _ in range(rd.u64()):
        name = rd.take(rd.u64()).decode()
        typ = rd.take(1)
        count = rd.u64()
        if typ == b"B":
            fields[name] = bytes(rd.take(count))
        elif typ == b"A":
            raw = rd.take(count * width)
            fields[name] = np.frombuffer(raw, dtype="<i8" if width == 8 else "<i4").astype(np.int64)
        elif typ == b"L":
            fields[name] = [bytes(rd.take(rd.u64())) for _ in range(count)]
        elif typ == b"S":
            fields[name] = rd.take(count).decode()
        else:
            raise ArchiveError(f"field {name!r}: unknown type {typ!r}")
    if rd.pos != len(data):
        raise ArchiveError("trailing bytes after the last field")
    return _TAG_KIND[tag], fields


def save(path, kind, fields):
    with open(path, "wb") as fh:
        fh.write(dumps(kind, fields))


def load(path):
    with open(path, "rb") as fh:
        return loads(fh.read())
