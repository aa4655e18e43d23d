import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from orsti.geo import BinaryTrie, GeoTextIndex, build_geo_text, geo_range_report, node_range_decompose
from orsti.grid import RankGrid2, range_report2


def test_single_point_text():
    g = build_geo_text([(1, 1)])
    assert g.width == 1
    assert g.text == "0#0"


def test_text_length_formula():
    rng = random.Random(0)
    pts = [(rng.randint(1, 4), rng.randint(1, 4)) for _ in range(4)]
    assert len(build_geo_text(pts).text) == 23


def test_full_range_is_root():
    for n in (1, 2, 3, 5, 8, 13):
        trie = BinaryTrie(list(range(1, n + 1)), max(1, math.ceil(math.log2(n))))
        parts = node_range_decompose(trie, 1, n)
        assert len(parts) == 1
        assert (parts[0].lo, parts[0].hi) == (1, n)


def test_singleton_range():
    trie = BinaryTrie([1, 3, 3, 6, 7], 3)
    for v in range(1, 9):
        parts = node_range_decompose(trie, v, v)
        assert len(parts) <= 3
        covered = [x for p in parts for x in trie.values[p.lo - 1:p.hi].tolist()]
        assert covered == ([v] * trie.values.tolist().count(v))


def test_rectangles():
    pts = [(1, 2), (3, 1), (2, 4), (4, 4)]
    g = build_geo_text(pts)
    assert geo_range_report(g, 1, 4, 1, 4) == sorted(pts)
    assert geo_range_report(g, 2, 2, 1, 3) == []
    with pytest.raises(ValueError):
        geo_range_report(g, 3, 2, 1, 1)
    with pytest.raises(ValueError):
        build_geo_text([(0, 1)])


def test_random_against_grid():
    rng = random.Random(19)
    for _ in range(150):
        n = rng.randint(1, 40)
        pts = [(rng.randint(1, n), rng.randint(1, n)) for _ in range(n)]
        g = GeoTextIndex(pts)
        grid = RankGrid2.from_points(pts)
        bound = (2 * max(1, math.ceil(math.log2(n)))) ** 2
        for _ in range(25):
            x1, x2 = sorted((rng.randint(1, n), rng.randint(1, n)))
            y1, y2 = sorted((rng.randint(1, n), rng.randint(1, n)))
            got, queries = g.report_with_stats(x1, x2, y1, y2)
            assert got == range_report2(grid, x1, x2, y1, y2)
            assert queries <= bound


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 64), min_size=1, max_size=40), st.integers(1, 64), st.integers(1, 64))
def test_decomposition_property(values, a, b):
    q, r = sorted((a, b))
    width = 6
    trie = BinaryTrie(values, width)
    parts = node_range_decompose(trie, q, r)
    assert len(parts) <= 2 * width
    covered = []
    for p in parts:
        chunk = trie.values[p.lo - 1:p.hi].tolist()
        assert all(format(v - 1, "06b").startswith(p.prefix) for v in chunk)
        covered.extend(chunk)
    assert sorted(covered) == sorted(v for v in values if q <= v <= r)
