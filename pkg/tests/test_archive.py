import numpy as np
import pytest

from orsti import archive


def test_round_trip_fields():
    fields = {"text": b"abc", "sa": np.array([0, 1, 2]), "docs": [b"a", b"bb"], "measure": "tf"}
    kind, got = archive.loads(archive.dumps("topk", fields))
    assert kind == "topk"
    assert got["text"] == b"abc"
    assert got["sa"].tolist() == [0, 1, 2]
    assert got["docs"] == [b"a", b"bb"]
    assert got["measure"] == "tf"


def test_header_layout():
    raw = archive.dumps("sa", {"sa": np.array([1, 2])})
    assert raw[:5] == b"ORSTI"
    assert raw[5] == archive.VERSION
    assert raw[6] == archive.KINDS.index("sa") + 1
    assert raw[7] == 0                                  # 32-bit arrays
    assert int.from_bytes(raw[8:16], "little") == 1
    # name "sa", type A, count 2, two little-endian int32 entries
    assert raw[16:] == (2).to_bytes(8, "little") + b"sa" + b"A" + (2).to_bytes(8, "little") + \
        (1).to_bytes(4, "little") + (2).to_bytes(4, "little")


def test_wide_arrays_flagged():
    raw = archive.dumps("sa", {"sa": np.array([2 ** 40])})
    assert raw[7] & 1
    assert archive.loads(raw)[1]["sa"].tolist() == [2 ** 40]


@pytest.mark.parametrize("mutate", [
    lambda r: b"XRSTI" + r[5:],
    lambda r: r[:5] + bytes([9]) + r[6:],
    lambda r: r[:6] + bytes([200]) + r[7:],
    lambda r: r[:-1],
    lambda r: r + b"\0",
    lambda r: r[:3],
])
def test_corruption_rejected(mutate):
    raw = archive.dumps("sa", {"text": b"ab", "sa": np.array([0, 1])})
    with pytest.raises(archive.ArchiveError):
        archive.loads(mutate(raw))


def test_unknown_kind():
    with pytest.raises(archive.ArchiveError):
        archive.dumps("nope", {})
