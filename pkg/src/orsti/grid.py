"""Static range-search structures over integer points.

``RankGrid2`` keeps the points sorted by x and stores, in that order, each
point's y-rank (ties between equal y values broken by x order, so the ranks
form a permutation).  A wavelet matrix over the rank sequence answers
counting, reporting, range successor and sorted reporting; x ranges become
position ranges by binary search, y ranges become rank ranges.

``RankGrid3`` adds a segment tree over the distinct z values with one 2D grid
per tree node.  ``WeightedGrid`` answers three-sided top-k by weight.

All range bounds are inclusive.  Points are returned as coordinate tuples
sorted by x then y (then z), except for the sorted-reporting queries whose
order is by y.
"""

import heapq

import numpy as np

from ._backend import kernels
from ._tables import bits_for

BELOW = "below"
ABOVE = "above"


def _check_range(a, b, what):
    if a > b:
        raise ValueError(f"inverted {what} range [{a}, {b}]")


def _xy_order(xs, ys, distinct_x):
    """Input ids sorted by (x, y, id)."""
    n = len(xs)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    if distinct_x:
        return np.argsort(xs)
    if (xs[1:] >= xs[:-1]).all() and ((xs[1:] > xs[:-1]) | (ys[1:] >= ys[:-1])).all():
        return np.arange(n, dtype=np.int64)
    xspan = int(xs.max()) - int(xs.min()) + 1
    yspan = int(ys.max()) - int(ys.min()) + 1
    if xspan * yspan < 1 << 62:
        return np.argsort((xs - xs.min()) * yspan + (ys - ys.min()), kind="stable")
    return np.lexsort((ys, xs))


class RankGrid2:
    """Points ``(x, y)`` with optional labels.

    With ``permutation=True`` the builder checks that x values and y values
    are each pairwise distinct.
    """

    def __init__(self, xs, ys, labels=None, permutation=False):
        xs = np.asarray(xs, dtype=np.int64).reshape(-1)
        ys = np.asarray(ys, dtype=np.int64).reshape(-1)
        if len(xs) != len(ys):
            raise ValueError("x and y arrays differ in length")
        n = len(xs)
        self.n = n
        self.labels = labels
        self.ids = _xy_order(xs, ys, permutation)              # x order -> input id
        self.xs = xs[self.ids]
        ys_x = ys[self.ids]
        # key -> x position; distinct y values need no stable sort
        key_order = np.argsort(ys_x, kind=None if permutation else "stable")
        if permutation and n and ((np.diff(self.xs) == 0).any() or (np.diff(ys_x[key_order]) == 0).any()):
            raise ValueError("coordinates are not a permutation")
        self.pos_of_key = key_order
        self.key_of_pos = np.empty(n, dtype=np.int64)
        self.key_of_pos[key_order] = np.arange(n, dtype=np.int64)
        self.ys = ys_x[key_order]                               # y value per key
        self._wm = kernels.WaveletMatrix(self.key_of_pos, bits_for(max(n, 1))) if n else None

    @classmethod
    def from_points(cls, points, labels=None, permutation=False):
        pts = list(points)
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        return cls(xs, ys, labels=labels, permutation=permutation)

    # -- coordinate translation ----------------------------------------------
    def _xpos(self, x1, x2):
        return (int(np.searchsorted(self.xs, x1, "left")),
                int(np.searchsorted(self.xs, x2, "right")))

    def _ykey(self, y1, y2):
        return (int(np.searchsorted(self.ys, y1, "left")),
                int(np.searchsorted(self.ys, y2, "right")))

    def point(self, key):
        """``(x, y)`` of the point with the given y-key."""
        return int(self.xs[self.pos_of_key[key]]), int(self.ys[key])

    def point_id(self, key):
        """Input index of the point with the given y-key."""
        return int(self.ids[self.pos_of_key[key]])

    def _keys_to_points(self, keys):
        keys = sorted(keys, key=lambda k: int(self.pos_of_key[k]))
        return [self.point(k) for k in keys]

    # -- queries -------------------------------------------------------------
    def report_keys(self, x1, x2, y1, y2):
        if self.n == 0:
            return []
        lo, hi = self._xpos(x1, x2)
        klo, khi = self._ykey(y1, y2)
        return self._wm.report(lo, hi, klo, khi)

    def range_report_ids(self, x1, x2, y1, y2):
        """Input indexes of the points in the rectangle, in (x, y) order."""
        _check_range(x1, x2, "x")
        _check_range(y1, y2, "y")
        keys = sorted(self.report_keys(x1, x2, y1, y2), key=lambda k: int(self.pos_of_key[k]))
        return [self.point_id(k) for k in keys]

    def range_report(self, x1, x2, y1, y2):
        _check_range(x1, x2, "x")
        _check_range(y1, y2, "y")
        return self._keys_to_points(self.report_keys(x1, x2, y1, y2))

    def range_count(self, x1, x2, y1, y2):
        _check_range(x1, x2, "x")
        _check_range(y1, y2, "y")
        if self.n == 0:
            return 0
        lo, hi = self._xpos(x1, x2)
        klo, khi = self._ykey(y1, y2)
        return self._wm.count(lo, hi, klo, khi)

    def successor_key(self, x1, x2, bound, direction):
        """y-key of the range successor, or -1."""
        _check_range(x1, x2, "x")
        if self.n == 0:
            return -1
        lo, hi = self._xpos(x1, x2)
        if lo >= hi:
            return -1
        if direction == BELOW:
            khi = int(np.searchsorted(self.ys, bound, "right"))
            key = self._wm.prev_value(lo, hi, khi)
            if key < 0:
                return -1
            # smallest x among the points sharing that y
            first = int(np.searchsorted(self.ys, self.ys[key], "left"))
            return self._wm.next_value(lo, hi, first)
        if direction == ABOVE:
            klo = int(np.searchsorted(self.ys, bound, "left"))
            return self._wm.next_value(lo, hi, klo)
        raise ValueError(f"unknown direction {direction!r}")

    def range_successor_y(self, x1, x2, bound, direction=BELOW):
        key = self.successor_key(x1, x2, bound, direction)
        return None if key < 0 else self.point(key)

    def kth_by_y(self, x1, x2, k):
        """The point with the ``k``-th smallest (1-based) y key in ``[x1, x2]``, or None."""
        _check_range(x1, x2, "x")
        if self.n == 0 or k < 1:
            return None
        lo, hi = self._xpos(x1, x2)
        if k > hi - lo:
            return None
        return self.point(self._wm.kth(lo, hi, k - 1))

    def sorted_keys(self, x1, x2, ybound, direction=BELOW, limit=None):
        """y-keys of the three-sided range in y order (groups of equal y by x)."""
        _check_range(x1, x2, "x")
        out = []
        if self.n == 0 or (limit is not None and limit <= 0):
            return out
        lo, hi = self._xpos(x1, x2)
        if lo >= hi:
            return out
        wm = self._wm
        ys = self.ys
        if direction == BELOW:
            cur = int(np.searchsorted(ys, ybound, "right"))
            while True:
                key = wm.prev_value(lo, hi, cur)
                if key < 0:
                    break
                start = int(np.searchsorted(ys, ys[key], "left"))
                group = wm.report(lo, hi, start, key + 1)
                out.extend(group)
                if limit is not None and len(out) >= limit:
                    return out[:limit]
                cur = start
        elif direction == ABOVE:
            cur = int(np.searchsorted(ys, ybound, "left"))
            while True:
                key = wm.next_value(lo, hi, cur)
                if key < 0:
                    break
                end = int(np.searchsorted(ys, ys[key], "right"))
                group = wm.report(lo, hi, key, end)
                out.extend(group)
                if limit is not None and len(out) >= limit:
                    return out[:limit]
                cur = end
        else:
            raise ValueError(f"unknown direction {direction!r}")
        return out

    def sorted_report_3sided(self, x1, x2, ybound, direction=BELOW, limit=None):
        return [self.point(k) for k in self.sorted_keys(x1, x2, ybound, direction, limit)]

    def sorted_report_2sided(self, xmax, ymax, limit=None):
        if self.n == 0:
            return []
        x1 = min(int(self.xs[0]), xmax)
        return self.sorted_report_3sided(x1, xmax, ymax, BELOW, limit)


class RankGrid3:
    """Points ``(x, y, z)``; a segment tree over distinct z values whose nodes
    each hold a :class:`RankGrid2` of their points."""

    def __init__(self, xs, ys, zs, labels=None):
        xs = np.asarray(xs, dtype=np.int64).reshape(-1)
        ys = np.asarray(ys, dtype=np.int64).reshape(-1)
        zs = np.asarray(zs, dtype=np.int64).reshape(-1)
        if not (len(xs) == len(ys) == len(zs)):
            raise ValueError("coordinate arrays differ in length")
        self.n = len(xs)
        self.xs, self.ys, self.zs = xs, ys, zs
        self.labels = labels
        self.zvalues, zrank = np.unique(zs, return_inverse=True)
        zrank = zrank.reshape(-1)
        self.nz = len(self.zvalues)
        self._nodes = {}
        if self.n:
            self._build(1, 0, self.nz, np.argsort(zrank, kind="stable"), zrank)

    def _build(self, node, a, b, members, zrank):
        # members: input ids whose z rank lies in [a, b)
        grid = RankGrid2(self.xs[members], self.ys[members])
        self._nodes[node] = (grid, members)
        if b - a > 1:
            mid = (a + b) >> 1
            left = members[zrank[members] < mid]
            right = members[zrank[members] >= mid]
            self._build(2 * node, a, mid, left, zrank)
            self._build(2 * node + 1, mid, b, right, zrank)

    def _cover(self, qa, qb):
        # canonical segment-tree nodes covering z ranks [qa, qb)
        out = []
        stack = [(1, 0, self.nz)]
        while stack:
            node, a, b = stack.pop()
            if qb <= a or b <= qa:
                continue
            if qa <= a and b <= qb:
                out.append(node)
                continue
            mid = (a + b) >> 1
            stack.append((2 * node, a, mid))
            stack.append((2 * node + 1, mid, b))
        return out

    def _zrank_range(self, z1, z2):
        return (int(np.searchsorted(self.zvalues, z1, "left")),
                int(np.searchsorted(self.zvalues, z2, "right")))

    def report_ids(self, x1, x2, y1, y2, z1, z2):
        """Input indexes of points in the box, sorted by (x, y, z, id)."""
        _check_range(x1, x2, "x")
        _check_range(y1, y2, "y")
        _check_range(z1, z2, "z")
        if self.n == 0:
            return []
        ids = []
        for node in self._cover(*self._zrank_range(z1, z2)):
            grid, members = self._nodes[node]
            ids.extend(int(members[i]) for i in grid.range_report_ids(x1, x2, y1, y2))
        ids.sort(key=lambda i: (int(self.xs[i]), int(self.ys[i]), int(self.zs[i]), i))
        return ids

    def report_6sided(self, x1, x2, y1, y2, z1, z2):
        return [(int(self.xs[i]), int(self.ys[i]), int(self.zs[i]))
                for i in self.report_ids(x1, x2, y1, y2, z1, z2)]

    report_5sided = report_6sided

    def count(self, x1, x2, y1, y2, z1, z2):
        _check_range(x1, x2, "x")
        _check_range(y1, y2, "y")
        _check_range(z1, z2, "z")
        if self.n == 0:
            return 0
        return sum(self._nodes[node][0].range_count(x1, x2, y1, y2)
                   for node in self._cover(*self._zrank_range(z1, z2)))


class WeightedGrid:
    """Weighted points with pairwise distinct x values.

    ``topk_3sided`` enumerates the qualifying points through the 2D grid and
    keeps the ``k`` heaviest, so its cost follows the number of points in the
    range rather than ``k``.  Equal weights are ordered by ``tie`` (when
    given) and then by x.
    """

    def __init__(self, xs, ys, weights, labels=None, tie=None):
        xs = np.asarray(xs, dtype=np.int64).reshape(-1)
        ys = np.asarray(ys, dtype=np.int64).reshape(-1)
        w = np.asarray(weights, dtype=np.int64).reshape(-1)
        if not (len(xs) == len(ys) == len(w)):
            raise ValueError("coordinate arrays differ in length")
        if len(np.unique(xs)) != len(xs):
            raise ValueError("x coordinates must be distinct")
        self.n = len(xs)
        self.xs, self.ys, self.weights = xs, ys, w
        self.labels = labels
        self.tie = np.zeros(len(xs), dtype=np.int64) if tie is None else np.asarray(tie, dtype=np.int64)
        self.grid = RankGrid2(xs, ys)

    def topk_ids(self, x1, x2, ymax, k):
        """Input indexes of the ``k`` heaviest points in ``[x1, x2] x (-inf, ymax]``."""
        _check_range(x1, x2, "x")
        if k < 0:
            raise ValueError("k must be non-negative")
        if k == 0 or self.n == 0:
            return []
        g = self.grid
        lo, hi = g._xpos(x1, x2)
        if lo >= hi:
            return []
        khi = int(np.searchsorted(g.ys, ymax, "right"))
        hits = [int(g.ids[g.pos_of_key[key]]) for key in g._wm.report(lo, hi, 0, khi)]
        w, xs, tie = self.weights, self.xs, self.tie
        return heapq.nsmallest(k, hits, key=lambda i: (-int(w[i]), int(tie[i]), int(xs[i])))

    def topk_3sided(self, x1, x2, ymax, k):
        """``[((x, y), weight), ...]`` heaviest first, ties by smaller x."""
        return [((int(self.xs[i]), int(self.ys[i])), int(self.weights[i]))
                for i in self.topk_ids(x1, x2, ymax, k)]


def range_report2(g, x1, x2, y1, y2):
    return g.range_report(x1, x2, y1, y2)


def range_count2(g, x1, x2, y1, y2):
    return g.range_count(x1, x2, y1, y2)


def range_successor_y(g, x1, x2, bound, direction=BELOW):
    return g.range_successor_y(x1, x2, bound, direction)


def sorted_report_3sided(g, x1, x2, ybound, direction=BELOW, limit=None):
    return g.sorted_report_3sided(x1, x2, ybound, direction, limit)


def sorted_report_2sided(g, xmax, ymax, limit=None):
    return g.sorted_report_2sided(xmax, ymax, limit)


def report_5sided(g, x1, x2, y1, y2, z1, z2):
    return g.report_6sided(x1, x2, y1, y2, z1, z2)


def topk_3sided(g, x1, x2, ymax, k):
    return g.topk_3sided(x1, x2, ymax, k)
