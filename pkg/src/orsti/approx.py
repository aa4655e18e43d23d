"""Indexing with one mismatch and gapped patterns over forward and reversed
suffix arrays.

Both suffix universes here include the empty suffix, which takes rank 1;
a real suffix ``i`` has rank ``isa[i] + 1``.  For ``i`` in ``[2, n + 1]`` the
point ``(x_i, y_i)`` pairs the forward rank of ``T[i..n]`` with the reversed
rank of ``T[1..i-2]`` read backwards, i.e. it straddles the single symbol
``T[i-1]``.  A pattern ``q`` with its mismatch at pivot ``l`` occurs at
``p = i - l`` exactly when ``x_i`` falls in the forward range of
``q[l+1..m]`` and ``y_i`` in the reversed range of ``q[1..l-1]``.
"""

import bisect

import numpy as np

from .grid import RankGrid2, RankGrid3
from .text import SuffixIndex, as_bytes, check_text


def _ext_isa(idx):
    # extended rank of suffixes 1..n+1 (index 0 unused)
    r = np.empty(idx.length + 2, dtype=np.int64)
    r[0] = 0
    r[1: idx.length + 1] = idx._isa + 2
    r[idx.length + 1] = 1
    return r


def _ext_range(idx, codes):
    """Extended-rank range ``(lo, hi)`` of suffixes starting with ``codes``."""
    if not codes:
        return 1, idx.n + 1
    rng = idx.sa_range_codes(codes)
    if rng.empty:
        return None
    return rng.lo + 1, rng.hi + 1


class _Bidirectional:
    def __init__(self, text, sa=None, rsa=None):
        self.text = check_text(text)
        n = len(self.text)
        self.n = n
        codes = np.frombuffer(self.text, dtype=np.uint8).astype(np.int64)
        self.fwd = SuffixIndex(codes, sa=sa)
        self.rev = SuffixIndex(codes[::-1].copy(), sa=rsa)
        self.fwd_rank = _ext_isa(self.fwd)
        self.rev_rank = _ext_isa(self.rev)

    def _fwd_range(self, pat):
        return _ext_range(self.fwd, list(pat))

    def _rev_range(self, pat):
        return _ext_range(self.rev, list(pat[::-1]))


class OneErrorIndex(_Bidirectional):
    def __init__(self, text, sa=None, rsa=None):
        super().__init__(text, sa, rsa)
        n = self.n
        i = np.arange(2, n + 2)
        self.point_i = i
        xs = self.fwd_rank[i]
        ys = self.rev_rank[n - i + 3]
        self.alphabet = sorted(set(self.text))
        sym = np.frombuffer(self.text, dtype=np.uint8).astype(np.int64)[i - 2]
        lookup = np.zeros(256, dtype=np.int64)
        lookup[self.alphabet] = np.arange(1, len(self.alphabet) + 1)
        zs = lookup[sym]
        self.grid2 = RankGrid2(xs, ys, labels=i, permutation=True)
        self.grid3 = RankGrid3(xs, ys, zs, labels=i)
        self._sym = sym

    def _pivot_boxes(self, q):
        for l in range(1, len(q) + 1):
            right = self._fwd_range(q[l:])
            if right is None:
                continue
            left = self._rev_range(q[: l - 1])
            if left is None:
                continue
            yield l, right, left

    def mismatch_pivots(self, q):
        """``{pivot: positions}`` found by the per-pivot queries."""
        q = as_bytes(q)
        out = {}
        for l, (x1, x2), (y1, y2) in self._pivot_boxes(q):
            hits = [int(self.point_i[j]) - l for j in self.grid2.range_report_ids(x1, x2, y1, y2)
                    if self._sym[j] != q[l - 1]]
            if hits:
                out[l] = hits
        return out

    def query_one_mismatch(self, q):
        """Positions where ``q`` matches with exactly one mismatch."""
        q = as_bytes(q)
        if not q:
            return []
        res = []
        for hits in self.mismatch_pivots(q).values():
            res.extend(hits)
        return sorted(res)

    def query_at_most_one(self, q):
        """Positions where ``q`` matches with at most one mismatch."""
        q = as_bytes(q)
        if not q:
            return []
        res = self.fwd.pattern_occurrences(q)
        sigma = len(self.alphabet)
        for l, (x1, x2), (y1, y2) in self._pivot_boxes(q):
            c = q[l - 1]
            below = bisect.bisect_left(self.alphabet, c)          # ranks 1..below are < c
            above = bisect.bisect_right(self.alphabet, c) + 1      # ranks above.. are > c
            for z1, z2 in ((1, below), (above, sigma)):
                if z1 <= z2:
                    ids = self.grid3.report_ids(x1, x2, y1, y2, z1, z2)
                    res.extend(int(self.point_i[j]) - l for j in ids)
        return sorted(res)


class GapIndex(_Bidirectional):
    """Answers ``q1 <any d symbols> q2`` for a gap length ``d`` fixed at build."""

    def __init__(self, text, d, sa=None, rsa=None):
        super().__init__(text, sa, rsa)
        if d < 0:
            raise ValueError("gap length must be non-negative")
        self.d = d
        n = self.n
        i = np.arange(d + 2, n + 2)
        self.point_i = i
        self.grid = RankGrid2(self.fwd_rank[i], self.rev_rank[n - i + d + 2], labels=i)

    def query(self, q1, q2):
        q1, q2 = as_bytes(q1), as_bytes(q2)
        if not q1 or not q2:
            raise ValueError("both pattern parts must be non-empty")
        right = self._fwd_range(q2)
        left = self._rev_range(q1)
        if right is None or left is None or self.grid.n == 0:
            return []
        ids = self.grid.range_report_ids(right[0], right[1], left[0], left[1])
        shift = self.d + len(q1)
        return sorted(int(self.point_i[j]) - shift for j in ids)


def build_one_error_index(text):
    return OneErrorIndex(text)


def query_one_mismatch(idx, q):
    return idx.query_one_mismatch(q)


def query_at_most_one(idx, q):
    return idx.query_at_most_one(q)


def build_gap_index(text, d):
    return GapIndex(text, d)


def query_gap(gidx, q1, q2):
    return gidx.query(q1, q2)
