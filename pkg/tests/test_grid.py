import random

import pytest
from hypothesis import given, settings, strategies as st

from orsti.grid import (ABOVE, BELOW, RankGrid2, RankGrid3, WeightedGrid, range_count2, range_report2,
                        range_successor_y, report_5sided, sorted_report_2sided, sorted_report_3sided, topk_3sided)
from orsti.text import build_suffix_index


def in_box(p, x1, x2, y1, y2):
    return x1 <= p[0] <= x2 and y1 <= p[1] <= y2


def test_small_examples():
    g = RankGrid2.from_points([(1, 2), (3, 1)])
    assert range_report2(g, 1, 3, 1, 2) == [(1, 2), (3, 1)]
    assert range_report2(g, 2, 2, 2, 2) == []
    assert range_count2(g, 1, 3, 1, 2) == 2
    assert range_count2(g, 2, 2, 2, 2) == 0


def figure_grid():
    s = "abaabaabaaba"
    idx = build_suffix_index(s)
    return RankGrid2(list(range(1, 13)), [idx.rank_of(i) for i in range(1, 13)])


def test_figure_range_successors():
    g = figure_grid()
    assert range_successor_y(g, 4, 7, 9, BELOW) == (4, 7)
    assert range_successor_y(g, 4, 7, 11, ABOVE) == (5, 11)
    assert range_successor_y(g, 4, 7, 0, BELOW) is None


def test_sorted_reports_all():
    pts = [(1, 5), (2, 3), (3, 9), (4, 1)]
    g = RankGrid2.from_points(pts)
    assert sorted_report_3sided(g, 1, 4, 10) == [(3, 9), (1, 5), (2, 3), (4, 1)]
    assert sorted_report_2sided(g, 4, 10) == [(3, 9), (1, 5), (2, 3), (4, 1)]
    assert sorted_report_2sided(g, 4, 10, limit=2) == [(3, 9), (1, 5)]


def test_three_d_trivia():
    g = RankGrid3([1, 2, 3], [3, 1, 2], [5, 6, 7])
    assert [p[:2] for p in report_5sided(g, 1, 3, 1, 3, 0, 100)] == [(1, 3), (2, 1), (3, 2)]
    assert report_5sided(g, 1, 3, 1, 3, 8, 9) == []


def test_topk_trivia():
    g = WeightedGrid([1, 2, 3], [1, 1, 5], [4, 9, 7])
    assert topk_3sided(g, 1, 3, 5, 0) == []
    assert topk_3sided(g, 1, 3, 5, 10) == [((2, 1), 9), ((3, 5), 7), ((1, 1), 4)]
    assert topk_3sided(g, 1, 3, 1, 10) == [((2, 1), 9), ((1, 1), 4)]


def test_permutation_check():
    with pytest.raises(ValueError):
        RankGrid2([1, 1], [1, 2], permutation=True)
    with pytest.raises(ValueError):
        RankGrid2([1], [1, 2])


def test_empty_grid():
    g = RankGrid2([], [])
    assert g.range_report(1, 5, 1, 5) == []
    assert g.range_count(1, 5, 1, 5) == 0
    assert g.range_successor_y(1, 5, 3) is None


def _queries(rng, pts, g, U, rounds):
    done = 0
    ids = list(range(len(pts)))
    for _ in range(rounds):
        x1, x2 = sorted((rng.randint(0, U + 1), rng.randint(0, U + 1)))
        y1, y2 = sorted((rng.randint(0, U + 1), rng.randint(0, U + 1)))
        box = [i for i in ids if in_box(pts[i], x1, x2, y1, y2)]
        assert g.range_report(x1, x2, y1, y2) == sorted(pts[i] for i in box)
        assert g.range_report_ids(x1, x2, y1, y2) == sorted(box, key=lambda i: (pts[i], i))
        assert g.range_count(x1, x2, y1, y2) == len(box)
        strip = [i for i in ids if x1 <= pts[i][0] <= x2]
        b = rng.randint(0, U + 1)
        below = [i for i in strip if pts[i][1] <= b]
        above = [i for i in strip if pts[i][1] >= b]
        exp_b = min(below, key=lambda i: (-pts[i][1], pts[i][0], i)) if below else None
        exp_a = min(above, key=lambda i: (pts[i][1], pts[i][0], i)) if above else None
        assert g.range_successor_y(x1, x2, b, BELOW) == (pts[exp_b] if below else None)
        assert g.range_successor_y(x1, x2, b, ABOVE) == (pts[exp_a] if above else None)
        order_b = [pts[i] for i in sorted(below, key=lambda i: (-pts[i][1], pts[i][0], i))]
        order_a = [pts[i] for i in sorted(above, key=lambda i: (pts[i][1], pts[i][0], i))]
        lim = rng.choice([None, 0, 1, 3])
        cut = (lambda L: L) if lim is None else (lambda L: L[:lim])
        assert g.sorted_report_3sided(x1, x2, b, BELOW, lim) == cut(order_b)
        assert g.sorted_report_3sided(x1, x2, b, ABOVE, lim) == cut(order_a)
        two = [pts[i] for i in sorted((i for i in ids if pts[i][0] <= x2 and pts[i][1] <= b),
                                      key=lambda i: (-pts[i][1], pts[i][0], i))]
        assert g.sorted_report_2sided(x2, b, lim) == cut(two)
        by_y = sorted(strip, key=lambda i: (pts[i][1], pts[i][0], i))
        k = rng.randint(1, len(strip) + 1)
        assert g.kth_by_y(x1, x2, k) == (pts[by_y[k - 1]] if k <= len(by_y) else None)
        done += 9
    return done


def test_grid2_against_filter_oracle():
    rng = random.Random(2024)
    total = 0
    while total < 100_000:
        n = rng.randint(1, 60)
        U = rng.choice([5, 20, 100])
        pts = [(rng.randint(1, U), rng.randint(1, U)) for _ in range(n)]
        g = RankGrid2.from_points(pts)
        total += _queries(rng, pts, g, U, 40)
    assert total >= 100_000


def test_grid3_against_filter_oracle():
    rng = random.Random(5)
    for _ in range(150):
        n = rng.randint(1, 50)
        U = rng.choice([4, 15, 60])
        pts = [(rng.randint(1, U), rng.randint(1, U), rng.randint(1, U)) for _ in range(n)]
        g = RankGrid3(*zip(*pts))
        for _ in range(30):
            b = [sorted((rng.randint(0, U + 1), rng.randint(0, U + 1))) for _ in range(3)]
            box = [i for i, p in enumerate(pts) if all(b[a][0] <= p[a] <= b[a][1] for a in range(3))]
            args = (b[0][0], b[0][1], b[1][0], b[1][1], b[2][0], b[2][1])
            assert g.report_6sided(*args) == sorted(pts[i] for i in box)
            assert g.report_ids(*args) == sorted(box, key=lambda i: (pts[i], i))
            assert g.count(*args) == len(box)


def test_weighted_against_filter_oracle():
    rng = random.Random(9)
    for _ in range(200):
        n = rng.randint(1, 60)
        xs = rng.sample(range(1, 200), n)
        ys = [rng.randint(1, 30) for _ in range(n)]
        ws = [rng.randint(0, 10) for _ in range(n)]
        g = WeightedGrid(xs, ys, ws)
        for _ in range(20):
            x1, x2 = sorted((rng.randint(0, 200), rng.randint(0, 200)))
            ymax = rng.randint(0, 31)
            k = rng.randint(0, n + 2)
            hits = [i for i in range(n) if x1 <= xs[i] <= x2 and ys[i] <= ymax]
            hits.sort(key=lambda i: (-ws[i], xs[i]))
            assert g.topk_3sided(x1, x2, ymax, k) == [((xs[i], ys[i]), ws[i]) for i in hits[:k]]


points = st.lists(st.tuples(st.integers(1, 30), st.integers(1, 30)), max_size=40)


@settings(max_examples=200, deadline=None)
@given(points, st.integers(0, 31), st.integers(0, 31), st.integers(0, 31), st.integers(0, 31))
def test_count_equals_report_length(pts, a, b, c, d):
    x1, x2 = sorted((a, b))
    y1, y2 = sorted((c, d))
    g = RankGrid2.from_points(pts)
    assert g.range_count(x1, x2, y1, y2) == len(g.range_report(x1, x2, y1, y2))
    assert sorted(g.range_report(x1, x2, y1, y2)) == sorted(p for p in pts if in_box(p, x1, x2, y1, y2))
