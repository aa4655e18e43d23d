"""Two-dimensional range reporting answered by pattern matching.

Each point ``(x, y)`` becomes the block ``b^R(x) # b(y)``, where ``b(v)``
writes ``v - 1`` in ``width`` bits, most significant first; blocks are joined
by ``$``.  A value range splits into at most ``2 * width`` bit-prefixes
(node-ranges of a binary trie), and for a prefix ``c`` of ``b(x)`` and a
prefix ``d`` of ``b(y)`` the occurrences of ``c^R # d`` are exactly the
blocks whose point has ``b(x)`` starting with ``c`` and ``b(y)`` starting
with ``d``.  ``#`` and ``$`` sort below ``0`` and ``1`` in ASCII.
"""

import math
from typing import NamedTuple

import numpy as np

from .text import SuffixIndex


class NodeRange(NamedTuple):
    prefix: str      # bit prefix shared by the range
    lo: int          # 1-based interval into the trie's sorted values
    hi: int


def _bits(v, width):
    return format(v - 1, f"0{width}b")


class BinaryTrie:
    """Compacted binary trie over fixed-width codes of a sorted value list."""

    def __init__(self, values, width):
        self.width = width
        self.values = np.sort(np.asarray(values, dtype=np.int64))
        uniq = np.unique(self.values)
        self.codes = [_bits(int(v), width) for v in uniq]
        self._uniq = uniq
        # node: (prefix, first unique index, end unique index, children)
        self.nodes = []
        if len(uniq):
            self._root = self._build(0, len(uniq))
        else:
            self._root = None

    def _build(self, a, b):
        first, last = self.codes[a], self.codes[b - 1]
        ell = 0
        while ell < self.width and first[ell] == last[ell]:
            ell += 1
        node = len(self.nodes)
        self.nodes.append([first[:ell], a, b, []])
        if b - a > 1:
            # first code with a 1 at position ell
            lo, hi = a, b
            while lo < hi:
                mid = (lo + hi) >> 1
                if self.codes[mid][ell] == "1":
                    hi = mid
                else:
                    lo = mid + 1
            self.nodes[node][3] = [self._build(a, lo), self._build(lo, b)]
        return node

    def node_range(self, node):
        prefix, a, b, _ = self.nodes[node]
        lo = int(np.searchsorted(self.values, self._uniq[a], "left")) + 1
        hi = int(np.searchsorted(self.values, self._uniq[b - 1], "right"))
        return NodeRange(prefix, lo, hi)

    def decompose(self, q, r):
        """Disjoint node-ranges whose union holds the values in ``[q, r]``."""
        if q > r:
            raise ValueError(f"invalid range [{q}, {r}]")
        out = []
        if self._root is None:
            return out
        stack = [self._root]
        while stack:
            node = stack.pop()
            _, a, b, kids = self.nodes[node]
            lo_v, hi_v = int(self._uniq[a]), int(self._uniq[b - 1])
            if hi_v < q or lo_v > r:
                continue
            if q <= lo_v and hi_v <= r:
                out.append(node)
            else:
                stack.extend(reversed(kids))
        return [self.node_range(v) for v in out]


class GeoTextIndex:
    def __init__(self, points, n=None):
        pts = [(int(x), int(y)) for x, y in points]
        if not pts:
            raise ValueError("empty point set")
        n = len(pts) if n is None else n
        for x, y in pts:
            if not (1 <= x <= n and 1 <= y <= n):
                raise ValueError(f"point ({x}, {y}) outside [1, {n}]^2")
        self.points = pts
        self.n = n
        self.width = max(1, math.ceil(math.log2(n)))
        w = self.width
        self.text = "$".join(_bits(x, w)[::-1] + "#" + _bits(y, w) for x, y in pts)
        self.tidx = SuffixIndex.from_text(self.text)
        self.xtree = BinaryTrie([x for x, _ in pts], w)
        self.ytree = BinaryTrie([y for _, y in pts], w)

    def report_with_stats(self, x1, x2, y1, y2):
        """``(points, number of pattern queries issued)``."""
        if x1 > x2 or y1 > y2:
            raise ValueError("inverted rectangle")
        x1, y1 = max(x1, 1), max(y1, 1)
        x2, y2 = min(x2, self.n), min(y2, self.n)
        if x1 > x2 or y1 > y2:
            return [], 0
        block = 2 * self.width + 2
        found = []
        queries = 0
        xs = self.xtree.decompose(x1, x2)
        ys = self.ytree.decompose(y1, y2)
        for c in xs:
            for d in ys:
                queries += 1
                for pos in self.tidx.pattern_occurrences(c.prefix[::-1] + "#" + d.prefix):
                    found.append(self.points[(pos + len(c.prefix) - 1 - self.width) // block])
        return sorted(found), queries

    def geo_range_report(self, x1, x2, y1, y2):
        return self.report_with_stats(x1, x2, y1, y2)[0]


def build_geo_text(points, n=None):
    return GeoTextIndex(points, n)


def node_range_decompose(trie, q, r):
    return trie.decompose(q, r)


def geo_range_report(g, x1, x2, y1, y2):
    return g.geo_range_report(x1, x2, y1, y2)
