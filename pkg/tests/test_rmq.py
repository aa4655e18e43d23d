import pytest
from hypothesis import given, settings, strategies as st

from orsti.rmq import bounded_report, build_rmq, rmq


def test_small_examples():
    s = build_rmq([2, 1, 3])
    assert rmq(s, 1, 3) == 2
    assert rmq(build_rmq([5]), 1, 1) == 1
    assert rmq(build_rmq([1, 1]), 1, 2) == 1


def test_bounded_report():
    s = build_rmq([3, 1, 4, 1, 5])
    assert bounded_report(s, 1, 5, 2) == [2, 4]
    assert bounded_report(s, 1, 5, 1) == []
    assert bounded_report(s, 2, 4, 100) == [2, 3, 4]


def test_invalid():
    with pytest.raises(ValueError):
        build_rmq([])
    s = build_rmq([1, 2])
    with pytest.raises(ValueError):
        rmq(s, 2, 1)
    with pytest.raises(ValueError):
        rmq(s, 0, 1)


arrays = st.lists(st.integers(-50, 50), min_size=1, max_size=200)


@settings(max_examples=200, deadline=None)
@given(arrays, st.data())
def test_rmq_oracle(a, data):
    s = build_rmq(a)
    i = data.draw(st.integers(1, len(a)))
    j = data.draw(st.integers(i, len(a)))
    seg = a[i - 1:j]
    assert rmq(s, i, j) == i + seg.index(min(seg))
    b = data.draw(st.integers(-60, 60))
    assert bounded_report(s, i, j, b) == [p for p in range(i, j + 1) if a[p - 1] < b]
