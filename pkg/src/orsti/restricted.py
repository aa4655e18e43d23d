"""Position-restricted pattern queries on the point set ``(isa[p], p)``.

A pattern's SA-range fixes an x interval; the y axis is the text position,
so restricting occurrences to a window, counting the ones up to ``k``,
selecting the ``k``-th one or finding the first one after ``i`` are all
plain range queries.
"""

import numpy as np

from .grid import ABOVE, RankGrid2
from .text import SuffixIndex, as_bytes


class RestrictedIndex:
    def __init__(self, text, sa=None):
        self.sidx = SuffixIndex.from_text(text, sa=sa)
        n = self.sidx.n
        self.n = n
        self.grid = RankGrid2(self.sidx._isa + 1, np.arange(1, n + 1), permutation=True)

    def _range(self, q):
        rng = self.sidx.sa_range(q)
        return None if rng.empty else rng

    def _window(self, i, j):
        if not (1 <= i <= j <= self.n):
            raise ValueError(f"invalid window [{i}, {j}]")

    def pri_report(self, q, i, j):
        """Starts of the occurrences lying entirely inside ``T[i..j]``."""
        self._window(i, j)
        q = as_bytes(q)
        rng = self._range(q)
        last = min(j - len(q) + 1, self.n)
        if rng is None or last < i:
            return []
        return sorted(y for _, y in self.grid.range_report(rng.lo, rng.hi, i, last))

    def pri_count(self, q, i, j):
        self._window(i, j)
        q = as_bytes(q)
        rng = self._range(q)
        last = min(j - len(q) + 1, self.n)
        if rng is None or last < i:
            return 0
        return self.grid.range_count(rng.lo, rng.hi, i, last)

    def substring_rank(self, q, k):
        """Number of occurrences starting at or before ``k``."""
        if not (1 <= k <= self.n):
            raise ValueError(f"position {k} out of range")
        rng = self._range(q)
        if rng is None:
            return 0
        return self.grid.range_count(rng.lo, rng.hi, 1, k)

    def substring_select(self, q, k):
        """Start of the ``k``-th occurrence, or None."""
        if k < 1:
            raise ValueError("k must be positive")
        rng = self._range(q)
        if rng is None:
            return None
        pt = self.grid.kth_by_y(rng.lo, rng.hi, k)
        return None if pt is None else pt[1]

    def successive(self, q, i):
        """First occurrence starting at or after ``i``, or None."""
        rng = self._range(q)
        if rng is None:
            return None
        pt = self.grid.range_successor_y(rng.lo, rng.hi, i, ABOVE)
        return None if pt is None else pt[1]

    def non_overlapping(self, q):
        """Greedy leftmost set of pairwise disjoint occurrences."""
        q = as_bytes(q)
        if not q:
            raise ValueError("empty pattern")
        out = []
        p = self.successive(q, 1)
        while p is not None:
            out.append(p)
            p = self.successive(q, p + len(q))
        return out


def build_restricted_index(text):
    return RestrictedIndex(text)


def pri_report(r, q, i, j):
    return r.pri_report(q, i, j)


def pri_count(r, q, i, j):
    return r.pri_count(q, i, j)


def substring_rank(r, q, k):
    return r.substring_rank(q, k)


def substring_select(r, q, k):
    return r.substring_select(q, k)


def successive(r, q, i):
    return r.successive(q, i)


def non_overlapping(r, q):
    return r.non_overlapping(q)
