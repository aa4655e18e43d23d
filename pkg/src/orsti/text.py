"""Suffix arrays, SA-ranges, LCP queries, generalized suffix arrays over
document collections and the suffix-tree view induced by the LCP array.

All positions and ranks in the public API are 1-based.  Internally texts are
integer code sequences: a plain text keeps its byte values (1..255), a
document collection shifts bytes up by the number of documents and uses
codes ``0 .. k-1`` as one distinct separator per document.
"""

from array import array
from typing import NamedTuple

import numpy as np

from ._backend import kernels
from .rmq import RmqStructure


class SaRange(NamedTuple):
    lo: int
    hi: int

    @property
    def empty(self):
        return self.hi < self.lo

    def __len__(self):
        return max(0, self.hi - self.lo + 1)


EMPTY_RANGE = SaRange(1, 0)


def as_bytes(data, what="text"):
    """Normalise ``str``/``bytes``/iterables of ints to ``bytes``."""
    if isinstance(data, str):
        data = data.encode("utf-8")
    elif not isinstance(data, (bytes, bytearray)):
        data = bytes(data)
    return bytes(data)


def check_text(data, what="text"):
    b = as_bytes(data)
    if not b:
        raise ValueError(f"empty {what}")
    if 0 in b:
        raise ValueError(f"{what} contains the reserved symbol 0")
    return b


def suffix_array(codes):
    """0-based suffix array of an integer sequence by prefix doubling.

    A suffix that is a proper prefix of another sorts first, i.e. the end of
    the sequence acts as a sentinel smaller than every code.
    """
    codes = np.asarray(codes, dtype=np.int64)
    n = len(codes)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    rank = np.unique(codes, return_inverse=True)[1].astype(np.int64).reshape(-1)
    sa = np.argsort(rank, kind="stable")
    if rank.max() == n - 1:
        return sa.astype(np.int64)
    k = 1
    while True:
        second = np.zeros(n, dtype=np.int64)
        if k < n:
            second[: n - k] = rank[k:] + 1
        key = (rank << 32) | second
        sa = np.argsort(key, kind="stable")
        sk = key[sa]
        fresh = np.empty(n, dtype=bool)
        fresh[0] = True
        np.not_equal(sk[1:], sk[:-1], out=fresh[1:])
        new_rank = np.cumsum(fresh) - 1
        rank = np.empty(n, dtype=np.int64)
        rank[sa] = new_rank
        if new_rank[-1] == n - 1:
            return sa.astype(np.int64)
        k <<= 1


class SuffixIndex:
    """Suffix array, inverse, adjacent-LCP array and RMQ over one code sequence.

    ``drop`` leading ranks (separator-initial suffixes) are removed from the
    suffix set.  ``sa``/``isa``/``lcp`` are exposed 1-based: ``sa[r - 1]`` is
    the start position of the rank-``r`` suffix, ``isa[i - 1]`` the rank of
    position ``i`` (0 for dropped positions).
    """

    def __init__(self, seq, offset=0, drop=0, suffix_end=None, sa=None):
        seq = np.ascontiguousarray(seq, dtype=np.int64)
        self.seq = seq
        self.offset = offset
        self.length = len(seq)
        full_sa = suffix_array(seq) if sa is None else np.asarray(sa, dtype=np.int64)
        full_rank = np.empty(self.length, dtype=np.int64)
        full_rank[full_sa] = np.arange(self.length, dtype=np.int64)
        full_lcp = kernels.kasai(seq, full_sa, full_rank)
        self.full_sa = full_sa
        self._sa = full_sa[drop:]
        self.n = len(self._sa)
        self._isa = full_rank - drop
        self._isa[self._isa < 0] = -1
        self._lcp = full_lcp[drop:]
        self.lcp_rmq = RmqStructure(self._lcp) if len(self._lcp) else None
        self._lcp_core = self.lcp_rmq._core if self.lcp_rmq else None
        if suffix_end is None:
            self._suffix_end = None
        else:
            self._suffix_end = np.asarray(suffix_end, dtype=np.int64)
        self._arr = array("q", seq.tolist())

    @classmethod
    def from_text(cls, text, sa=None):
        b = check_text(text)
        return cls(np.frombuffer(b, dtype=np.uint8).astype(np.int64), sa=sa)

    # -- 1-based views ---------------------------------------------------
    @property
    def sa(self):
        return self._sa + 1

    @property
    def isa(self):
        return self._isa + 1

    @property
    def lcp(self):
        return self._lcp

    def rank_of(self, i):
        return int(self._isa[i - 1]) + 1

    def pos_at(self, r):
        return int(self._sa[r - 1]) + 1

    def suffix_len(self, i):
        """Length of suffix ``i`` up to (excluding) its terminator."""
        if self._suffix_end is None:
            return self.length - i + 1
        return int(self._suffix_end[i - 1]) - i + 1

    # -- pattern handling ------------------------------------------------
    def encode(self, pattern):
        b = as_bytes(pattern)
        return [c + self.offset for c in b]

    def _lcp_ranks(self, a, b):
        """|LCP| of the suffixes at 0-based ranks ``a != b``."""
        if a > b:
            a, b = b, a
        core = self._lcp_core
        return int(core.values[core.query(a, b - 1)])

    def _compare(self, pat, r, start):
        # (lcp, sign): sign -1 pattern < suffix, 0 pattern is a prefix, +1 pattern > suffix
        arr = self._arr
        p = int(self._sa[r])
        m = len(pat)
        size = self.length
        ell = start
        while ell < m and p + ell < size and arr[p + ell] == pat[ell]:
            ell += 1
        if ell == m:
            return ell, 0
        if p + ell == size:
            return ell, 1
        return ell, (-1 if pat[ell] < arr[p + ell] else 1)

    def _bound(self, pat, upper):
        # binary search keeping the compared suffix with the longest match;
        # the LCP bound decides most comparisons without touching the text
        lo, hi = 0, self.n
        best_r, best_l, best_sign = -1, -1, 0
        while lo < hi:
            mid = (lo + hi) >> 1
            if best_r >= 0:
                h = self._lcp_ranks(best_r, mid)
                if h < best_l:
                    ell, sign = h, (-1 if mid > best_r else 1)
                elif h > best_l:
                    ell, sign = best_l, best_sign
                else:
                    ell, sign = self._compare(pat, mid, best_l)
            else:
                ell, sign = self._compare(pat, mid, 0)
            if ell > best_l:
                best_r, best_l, best_sign = mid, ell, sign
            if sign > 0 or (upper and sign == 0):
                lo = mid + 1
            else:
                hi = mid
        return lo

    def sa_range_codes(self, pat):
        if not pat:
            return SaRange(1, self.n)
        lo = self._bound(pat, False)
        hi = self._bound(pat, True)
        if lo >= hi:
            return EMPTY_RANGE
        return SaRange(lo + 1, hi)

    def sa_range(self, pattern):
        return self.sa_range_codes(self.encode(pattern))

    def lcp_len(self, i, j):
        if not (1 <= i <= self.length and 1 <= j <= self.length):
            raise ValueError("position out of range")
        a, b = int(self._isa[i - 1]), int(self._isa[j - 1])
        if a < 0 or b < 0:
            raise ValueError("position is not an indexed suffix")
        if i == j:
            return self.suffix_len(i)
        return self._lcp_ranks(a, b)

    def pattern_occurrences(self, pattern):
        rng = self.sa_range(pattern)
        if rng.empty:
            return []
        return sorted((self._sa[rng.lo - 1: rng.hi] + 1).tolist())


def build_suffix_index(text):
    return SuffixIndex.from_text(text)


def sa_range(idx, pattern):
    return idx.sa_range(pattern)


def lcp_len(idx, i, j):
    return idx.lcp_len(i, j)


def pattern_occurrences(idx, pattern):
    return idx.pattern_occurrences(pattern)


# -- document collections ------------------------------------------------

class DocumentIndex:
    """Generalized suffix array over ``docs`` with the document array ``da``
    and predecessor document array ``psi`` (both indexed by rank - 1)."""

    def __init__(self, docs, sa=None):
        if not docs:
            raise ValueError("empty document collection")
        docs = [check_text(d, "document") for d in docs]
        self.docs = docs
        k = len(docs)
        self.k = k
        parts = []
        doc_of = []
        starts = []
        pos = 0
        for d, text in enumerate(docs):
            codes = np.frombuffer(text, dtype=np.uint8).astype(np.int64) + k
            parts.append(codes)
            parts.append(np.array([d], dtype=np.int64))
            starts.append(pos)
            doc_of.append(np.full(len(text) + 1, d + 1, dtype=np.int64))
            pos += len(text) + 1
        seq = np.concatenate(parts)
        self.doc_starts = np.asarray(starts, dtype=np.int64)
        self.doc_of_pos = np.concatenate(doc_of)
        ends = np.repeat(self.doc_starts + np.array([len(t) for t in docs]),
                         [len(t) + 1 for t in docs])
        self.gsa = SuffixIndex(seq, offset=k, drop=k, suffix_end=ends, sa=sa)
        self.n = self.gsa.n
        self.da = self.doc_of_pos[self.gsa._sa]
        self.psi = _predecessor_array(self.da)
        self.psi_rmq = RmqStructure(self.psi)

    def locate(self, r):
        """(document id, 1-based offset) of the suffix at rank ``r``."""
        p = int(self.gsa._sa[r - 1])
        d = int(self.doc_of_pos[p])
        return d, p - int(self.doc_starts[d - 1]) + 1

    def sa_range(self, pattern):
        return self.gsa.sa_range(pattern)


def _predecessor_array(da):
    n = len(da)
    order = np.lexsort((np.arange(n), da))
    psi = np.full(n, -1, dtype=np.int64)
    same = da[order[1:]] == da[order[:-1]]
    psi[order[1:][same]] = order[:-1][same] + 1
    return psi


def build_document_index(docs):
    return DocumentIndex(docs)


# -- suffix-tree view ----------------------------------------------------

class SuffixTreeView:
    """Suffix tree realised as nested SA intervals, nodes numbered in preorder.

    Node 0 is the root (string depth 0, interval ``[1, n]``).  Every other
    internal node has at least two children; the root may have a single
    child when all suffixes share a first symbol.  Leaves carry their suffix
    length plus one for the terminator, so depths strictly increase downward.
    """

    def __init__(self, idx):
        self.idx = idx
        n = idx.n
        lo, hi, sdepth, parent, owner = kernels.lcp_intervals(idx._lcp, n)
        m = len(lo)
        leaf_ranks = np.arange(n, dtype=np.int64)
        end = idx.length if idx._suffix_end is None else idx._suffix_end[idx._sa]
        leaf_len = end - idx._sa + 1
        if n > 1:
            left = np.concatenate([[-1], owner])
            right = np.concatenate([owner, [-1]])
            dl = np.where(left >= 0, sdepth[np.maximum(left, 0)], -1)
            dr = np.where(right >= 0, sdepth[np.maximum(right, 0)], -1)
            leaf_parent = np.where(dl >= dr, left, right)
        else:
            leaf_parent = np.zeros(n, dtype=np.int64)
        all_lo = np.concatenate([lo, leaf_ranks])
        all_hi = np.concatenate([hi, leaf_ranks])
        all_sd = np.concatenate([sdepth, leaf_len])
        all_parent = np.concatenate([parent, leaf_parent])
        order = np.lexsort((all_sd, -all_hi, all_lo))
        new_id = np.empty(len(order), dtype=np.int64)
        new_id[order] = np.arange(len(order), dtype=np.int64)
        self.lo = all_lo[order] + 1
        self.hi = all_hi[order] + 1
        self.string_depth = all_sd[order]
        par = all_parent[order]
        self.parent = np.where(par >= 0, new_id[np.maximum(par, 0)], -1)
        self.leaf_of = new_id[m + leaf_ranks]
        self.lcp_owner = new_id[owner] if len(owner) else owner
        self.size = len(order)
        self.is_leaf = np.zeros(self.size, dtype=bool)
        self.is_leaf[self.leaf_of] = True
        # children in preorder == sorted by interval start
        kids = np.argsort(self.parent[1:], kind="stable") + 1
        counts = np.bincount(self.parent[1:], minlength=self.size)
        self.child_start = np.concatenate([[0], np.cumsum(counts)])
        self.child_list = kids
        self.depth = _tree_depths(self.parent)
        # preorder: the subtree of v is [v, subtree_end[v])
        self.subtree_end = np.searchsorted(self.lo, self.hi, side="right")
        self.subtree_end = np.maximum(self.subtree_end, np.arange(self.size) + 1)
        self._interval_node = None

    def children(self, v):
        return self.child_list[self.child_start[v]: self.child_start[v + 1]].tolist()

    def lca_of_ranks(self, a, b):
        """Node id of the LCA of the leaves at 1-based ranks ``a`` and ``b``."""
        if a == b:
            return int(self.leaf_of[a - 1])
        if a > b:
            a, b = b, a
        h = self.idx._lcp_core.query(a - 1, b - 2)
        return int(self.lcp_owner[h])

    def node_for_range(self, rng):
        """The highest node whose interval equals ``rng`` (the locus)."""
        if rng.empty:
            return None
        if self._interval_node is None:
            table = {}
            for v in range(self.size - 1, -1, -1):
                table[(int(self.lo[v]), int(self.hi[v]))] = v
            self._interval_node = table
        return self._interval_node.get((rng.lo, rng.hi))


def _tree_depths(parent):
    # edge depth of every node by pointer jumping
    depth = (parent >= 0).astype(np.int64)
    anc = parent.copy()
    while True:
        live = anc >= 0
        if not live.any():
            return depth
        idx = np.nonzero(live)[0]
        up = anc[idx]
        depth[idx] = depth[idx] + depth[up]
        anc[idx] = anc[up]


def build_tree_view(idx):
    return SuffixTreeView(idx)
