"""Weighted ancestor queries.

Every node with a single child gets an extra dummy leaf (edge weight 1), so
all internal nodes branch.  With leaves ``l_1 .. l_k`` in left-to-right
order and ``nw(j) = w(LCA(l_j, l_{j+1}))``, the parent of the answer for
``(l_i, t)`` is the deeper of ``LCA(l_j, l_{j+1})`` for the largest ``j < i``
with ``nw(j) < t`` and for the smallest ``j >= i`` with ``nw(j) < t``.  Both
are two-sided sorted reporting queries on the points ``(nw(j), j)`` and
``(nw(j), k - j)``; the answer itself is the child of that node whose leaf
interval holds ``i``, found by predecessor search over the children's
leftmost leaves.
"""

import bisect

import numpy as np

from .grid import RankGrid2
from .text import SaRange, SuffixTreeView


def _path_sums(parent, w):
    # root-to-node weight sums by pointer jumping
    total = w.astype(np.int64).copy()
    anc = parent.copy()
    while True:
        live = np.nonzero(anc >= 0)[0]
        if len(live) == 0:
            return total
        up = anc[live]
        total[live] = total[live] + total[up]
        anc[live] = anc[up]


def _preorder(parent):
    """Preorder of a parent-array tree (children by id) and subtree ends."""
    n = len(parent)
    roots = [v for v in range(n) if parent[v] < 0]
    if len(roots) != 1:
        raise ValueError(f"expected exactly one root, found {len(roots)}")
    kids = [[] for _ in range(n)]
    for v in range(n):
        p = parent[v]
        if p >= 0:
            if p >= n:
                raise ValueError(f"node {v}: parent {p} does not exist")
            kids[p].append(v)
    order = []
    end = [0] * n
    stack = [(roots[0], False)]
    while stack:
        v, done = stack.pop()
        if done:
            end[v] = len(order)
            continue
        order.append(v)
        stack.append((v, True))
        for c in reversed(kids[v]):
            stack.append((c, False))
    if len(order) != n:
        raise ValueError("parent links contain a cycle")
    return order, end


class WeightedTree:
    """Edge-weighted rooted tree given as parent and edge-weight arrays.

    ``parent[root] = -1``; ``weight[v]`` is the weight of the edge above
    ``v`` (ignored for the root).  Children are ordered by node id.
    """

    def __init__(self, parent, weight):
        parent = [int(p) for p in parent]
        weight = [int(x) for x in weight]
        n = len(parent)
        if n == 0:
            raise ValueError("empty tree")
        if len(weight) != n:
            raise ValueError("parent and weight arrays differ in length")
        self.n_nodes = n
        order, end = _preorder(parent)
        order = np.asarray(order, dtype=np.int64)
        rank = np.empty(n, dtype=np.int64)
        rank[order] = np.arange(n)
        se = np.asarray(end, dtype=np.int64)[order]
        for v in range(n):
            if parent[v] >= 0 and weight[v] <= 0:
                raise ValueError(f"node {v}: edge weight must be positive")
        self._build(order, rank, np.asarray(parent, dtype=np.int64), np.asarray(weight, dtype=np.int64), se)

    @classmethod
    def _from_preorder(cls, parent, weight, subtree_end):
        # parents precede children and ids are already a preorder
        self = cls.__new__(cls)
        parent = np.asarray(parent, dtype=np.int64)
        weight = np.asarray(weight, dtype=np.int64)
        n = len(parent)
        self.n_nodes = n
        if n > 1 and (weight[1:] <= 0).any():
            raise ValueError("edge weights must be positive")
        ident = np.arange(n, dtype=np.int64)
        self._build(ident, ident, parent, weight, np.asarray(subtree_end, dtype=np.int64))
        return self

    def _build(self, order, rank, parent, weight, se):
        n = len(order)
        par = np.where(parent[order] >= 0, rank[np.maximum(parent[order], 0)], -1)
        w = weight[order].copy()
        w[0] = 0
        count = np.bincount(par[1:], minlength=n) if n > 1 else np.zeros(n, dtype=np.int64)
        owners = np.nonzero(count == 1)[0]
        # splice each dummy into the preorder right after its owner's subtree,
        # deeper owners first: real x sorts at (x, M-1), the dummy of v at (se[v], n-v)
        m = n + 2
        keys = np.concatenate([np.arange(n) * m + (m - 1), se[owners] * m + (n - owners)])
        srt = np.argsort(keys, kind="stable")
        keys = keys[srt]
        size = len(keys)
        new_of_real = np.empty(n, dtype=np.int64)
        pos = np.empty(size, dtype=np.int64)
        pos[srt] = np.arange(size)
        new_of_real[:] = pos[:n]
        dummy_pos = pos[n:]
        ext_real = np.full(size, -1, dtype=np.int64)   # extended index -> preorder index of a real node
        ext_real[new_of_real] = np.arange(n)
        ext_par = np.empty(size, dtype=np.int64)
        ext_par[new_of_real] = np.where(par >= 0, new_of_real[np.maximum(par, 0)], -1)
        ext_par[dummy_pos] = new_of_real[owners]
        ext_w = np.empty(size, dtype=np.int64)
        ext_w[new_of_real] = w
        ext_w[dummy_pos] = 1
        ext_se = np.empty(size, dtype=np.int64)
        ext_se[new_of_real] = np.searchsorted(keys, se * m + (n - np.arange(n)), "right")
        ext_se[dummy_pos] = dummy_pos + 1

        self.order = order                              # preorder index -> node id
        self._ext_of_node = new_of_real[rank]          # node id -> extended index
        self._node_of_ext = np.where(ext_real >= 0, order[np.maximum(ext_real, 0)], -1)
        self.node_weight = _path_sums(ext_par, ext_w)   # by extended index
        ecount = np.bincount(ext_par[1:], minlength=size) if size > 1 else np.zeros(size, dtype=np.int64)
        leaves = np.nonzero(ecount == 0)[0]
        self.leaf_ext = leaves
        self.k = k = len(leaves)
        self.lml = np.searchsorted(leaves, np.arange(size)) + 1          # 1-based
        self.rml = np.searchsorted(leaves, ext_se)                       # 1-based, inclusive
        kids = np.arange(1, size)
        p = ext_par[1:]
        boundary = ext_se[kids] != ext_se[p]
        bj = self.rml[kids[boundary]]
        self.nw = np.zeros(max(k - 1, 0), dtype=np.int64)
        self.lca_node = np.zeros(max(k - 1, 0), dtype=np.int64)   # extended index
        self.nw[bj - 1] = self.node_weight[p[boundary]]
        self.lca_node[bj - 1] = p[boundary]
        # children of every node, in order, with their leftmost leaves
        srt = np.argsort(p, kind="stable")
        self._child_id = kids[srt]
        self._child_lml = self.lml[self._child_id].tolist()
        self._child_start = np.searchsorted(p[srt], np.arange(size + 1)).tolist()
        j = np.arange(1, k, dtype=np.int64)
        if k > 1:
            self.left_grid = RankGrid2(self.nw, j)
            self.right_grid = RankGrid2(self.nw, k - j)
        else:
            self.left_grid = self.right_grid = None

    # -- queries ---------------------------------------------------------
    def weight_of(self, v):
        return int(self.node_weight[self._ext_of_node[v]])

    def leaves(self):
        """Real leaves in left-to-right order (node ids)."""
        return [int(v) for v in self._node_of_ext[self.leaf_ext] if v >= 0]

    def _parent_of_answer(self, i, t):
        best = None
        if self.left_grid is not None:
            if i > 1:
                hit = self.left_grid.sorted_report_2sided(t - 1, i - 1, limit=1)
                if hit:
                    best = int(self.lca_node[hit[0][1] - 1])
            if i < self.k:
                hit = self.right_grid.sorted_report_2sided(t - 1, self.k - i, limit=1)
                if hit:
                    cand = int(self.lca_node[self.k - hit[0][1] - 1])
                    if best is None or self.node_weight[cand] > self.node_weight[best]:
                        best = cand
        return best

    def weighted_ancestor(self, u, t):
        """Highest ancestor ``v`` of node ``u`` with ``w(v) >= t``."""
        if not (0 <= u < self.n_nodes):
            raise ValueError(f"unknown node {u}")
        x = int(self._ext_of_node[u])
        if not (1 <= t <= self.node_weight[x]):
            raise ValueError(f"threshold {t} outside [1, {int(self.node_weight[x])}]")
        i = int(self.lml[x])
        p = self._parent_of_answer(i, t)
        a, b = self._child_start[p], self._child_start[p + 1]
        c = bisect.bisect_right(self._child_lml, i, a, b) - 1
        return int(self._node_of_ext[self._child_id[c]])


def build_weighted_tree(parent, weight):
    return WeightedTree(parent, weight)


def weighted_ancestor(wt, u, t):
    return wt.weighted_ancestor(u, t)


def parse_tree_lines(lines):
    """``parent weight`` per line, node ids are 0-based line numbers, the
    root's parent is -1."""
    parent, weight = [], []
    for no, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {no}: expected 'parent weight'")
        parent.append(int(parts[0]))
        weight.append(int(parts[1]))
    return parent, weight


class LocusIndex:
    """Suffix-tree loci of substrings ``T[i..j]`` by weighted ancestor queries
    with string depths as node weights."""

    def __init__(self, idx, tree=None):
        self.idx = idx
        self.tree = tree if tree is not None else SuffixTreeView(idx)
        tv = self.tree
        sd = tv.string_depth
        w = sd - sd[np.maximum(tv.parent, 0)]
        self.wt = WeightedTree._from_preorder(tv.parent, w, tv.subtree_end)

    def st_locus(self, i, j):
        n = self.idx.length
        if not (1 <= i <= j <= n):
            raise ValueError(f"invalid substring range [{i}, {j}]")
        leaf = int(self.tree.leaf_of[self.idx.rank_of(i) - 1])
        v = self.wt.weighted_ancestor(leaf, j - i + 1)
        return SaRange(int(self.tree.lo[v]), int(self.tree.hi[v]))


def st_locus(lidx, i, j):
    return lidx.st_locus(i, j)
