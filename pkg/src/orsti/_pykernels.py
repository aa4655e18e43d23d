"""Pure-Python kernels.

Same classes and functions as the compiled ``_ckernels`` module, selected
when the extension is unavailable or ``ORSTI_PURE_PYTHON`` is set.  All
indices here are 0-based and ranges are inclusive unless noted.
"""

import numpy as np

from ._tables import RMQ_BLOCK, RMQ_SHIFT, block_rmq_tables, wavelet_levels

BACKEND = "python"


def kasai(seq, sa, rank):
    """Adjacent LCP array (``lcp[r] = |LCP(sa[r], sa[r+1])|``) by Kasai's scan."""
    s = seq.tolist() if hasattr(seq, "tolist") else list(seq)
    sa_l = sa.tolist()
    rank_l = rank.tolist()
    n = len(s)
    lcp = [0] * max(n - 1, 0)
    h = 0
    for i in range(n):
        r = rank_l[i]
        if r > 0:
            j = sa_l[r - 1]
            while i + h < n and j + h < n and s[i + h] == s[j + h]:
                h += 1
            lcp[r - 1] = h
            if h:
                h -= 1
        else:
            h = 0
    return np.asarray(lcp, dtype=np.int64)


class BlockRmq:
    """Leftmost-minimum queries over a fixed integer array."""

    def __init__(self, values):
        a, block_pos, sparse = block_rmq_tables(values)
        self.values = a
        self.n = len(a)
        self._a = a.tolist()
        self._block_pos = block_pos.tolist()
        self._sparse = [row.tolist() for row in sparse]
        self._nblocks = len(self._block_pos)

    def _scan(self, i, j):
        a = self._a
        best = i
        bv = a[i]
        for p in range(i + 1, j + 1):
            if a[p] < bv:
                bv = a[p]
                best = p
        return best

    def _blocks(self, b1, b2):
        k = (b2 - b1 + 1).bit_length() - 1
        row = self._sparse[k]
        left = row[b1]
        right = row[b2 - (1 << k) + 1]
        return right if self._a[right] < self._a[left] else left

    def query(self, i, j):
        bi = i >> RMQ_SHIFT
        bj = j >> RMQ_SHIFT
        if bi == bj:
            return self._scan(i, j)
        a = self._a
        best = self._scan(i, ((bi + 1) << RMQ_SHIFT) - 1)
        if bj - bi > 1:
            mid = self._blocks(bi + 1, bj - 1)
            if a[mid] < a[best]:
                best = mid
        tail = self._scan(bj << RMQ_SHIFT, j)
        if a[tail] < a[best]:
            best = tail
        return best

    def query_many(self, lo, hi):
        return np.asarray([self.query(i, j) for i, j in zip(lo.tolist(), hi.tolist())], dtype=np.int64)

    def bounded(self, i, j, bound):
        """Positions in ``[i, j]`` holding a value ``< bound``, ascending."""
        out = []
        a = self._a
        stack = [(i, j)]
        while stack:
            lo, hi = stack.pop()
            if lo > hi:
                continue
            p = self.query(lo, hi)
            if a[p] < bound:
                out.append(p)
                stack.append((p + 1, hi))
                stack.append((lo, p - 1))
        out.sort()
        return out

    def prev_less(self, p, bound):
        """Largest index ``q <= p`` with ``values[q] < bound``, or -1."""
        if p < 0:
            return -1
        if p >= self.n:
            p = self.n - 1
        a = self._a
        start = p & ~(RMQ_BLOCK - 1)
        for q in range(p, start - 1, -1):
            if a[q] < bound:
                return q
        x = (p >> RMQ_SHIFT) - 1
        for k in range(len(self._sparse) - 1, -1, -1):
            w = 1 << k
            if x - w + 1 >= 0 and a[self._sparse[k][x - w + 1]] >= bound:
                x -= w
        if x < 0:
            return -1
        for q in range(min(((x + 1) << RMQ_SHIFT), self.n) - 1, (x << RMQ_SHIFT) - 1, -1):
            if a[q] < bound:
                return q
        return -1

    def next_less(self, p, bound):
        """Smallest index ``q >= p`` with ``values[q] < bound``, or ``n``."""
        n = self.n
        if p >= n:
            return n
        a = self._a
        end = min((p | (RMQ_BLOCK - 1)) + 1, n)
        for q in range(p, end):
            if a[q] < bound:
                return q
        x = (p >> RMQ_SHIFT) + 1
        nb = self._nblocks
        for k in range(len(self._sparse) - 1, -1, -1):
            w = 1 << k
            if x + w - 1 < nb and a[self._sparse[k][x]] >= bound:
                x += w
        if x >= nb:
            return n
        for q in range(x << RMQ_SHIFT, min((x + 1) << RMQ_SHIFT, n)):
            if a[q] < bound:
                return q
        return n


class WaveletMatrix:
    """Wavelet matrix over a sequence of values in ``[0, 2**nbits)``.

    Position ranges are half-open ``[lo, hi)``.
    """

    def __init__(self, values, nbits):
        words, cum, zeros = wavelet_levels(values, nbits)
        self.n = len(values)
        self.nbits = nbits
        self._words = [[int(w) for w in row] for row in words]
        self._cum = [row.tolist() for row in cum]
        self._zeros = zeros.tolist()

    def _rank1(self, level, i):
        w = i >> 6
        word = self._words[level][w] & ((1 << (i & 63)) - 1)
        return self._cum[level][w] + word.bit_count()

    def count_less(self, lo, hi, v):
        """Number of values ``< v`` among positions ``[lo, hi)``."""
        if v <= 0 or lo >= hi:
            return 0
        if v >= (1 << self.nbits):
            return hi - lo
        res = 0
        for level in range(self.nbits):
            r1lo = self._rank1(level, lo)
            r1hi = self._rank1(level, hi)
            if (v >> (self.nbits - 1 - level)) & 1:
                res += (hi - r1hi) - (lo - r1lo)
                z = self._zeros[level]
                lo = z + r1lo
                hi = z + r1hi
            else:
                lo -= r1lo
                hi -= r1hi
        return res

    def count(self, lo, hi, vlo, vhi):
        """Number of values in ``[vlo, vhi)`` among positions ``[lo, hi)``."""
        if vlo >= vhi:
            return 0
        return self.count_less(lo, hi, vhi) - self.count_less(lo, hi, vlo)

    def kth(self, lo, hi, k):
        """The ``k``-th smallest value (0-based) among positions ``[lo, hi)``."""
        val = 0
        for level in range(self.nbits):
            r1lo = self._rank1(level, lo)
            r1hi = self._rank1(level, hi)
            z_in = (hi - r1hi) - (lo - r1lo)
            if k < z_in:
                lo -= r1lo
                hi -= r1hi
            else:
                k -= z_in
                z = self._zeros[level]
                lo = z + r1lo
                hi = z + r1hi
                val |= 1 << (self.nbits - 1 - level)
        return val

    def prev_value(self, lo, hi, v):
        """Largest value ``< v`` in ``[lo, hi)``, or -1."""
        c = self.count_less(lo, hi, v)
        if c == 0:
            return -1
        return self.kth(lo, hi, c - 1)

    def next_value(self, lo, hi, v):
        """Smallest value ``>= v`` in ``[lo, hi)``, or -1."""
        if lo >= hi:
            return -1
        c = self.count_less(lo, hi, v)
        if c == hi - lo:
            return -1
        return self.kth(lo, hi, c)

    def report(self, lo, hi, vlo, vhi):
        """All values in ``[vlo, vhi)`` among positions ``[lo, hi)``, ascending."""
        out = []
        if lo >= hi or vlo >= vhi:
            return out
        nbits = self.nbits
        stack = [(0, lo, hi, 0)]
        while stack:
            level, lo, hi, prefix = stack.pop()
            if lo >= hi:
                continue
            span = 1 << (nbits - level)
            if prefix >= vhi or prefix + span <= vlo:
                continue
            if level == nbits:
                out.extend([prefix] * (hi - lo))
                continue
            r1lo = self._rank1(level, lo)
            r1hi = self._rank1(level, hi)
            z = self._zeros[level]
            half = span >> 1
            stack.append((level + 1, z + r1lo, z + r1hi, prefix | half))
            stack.append((level + 1, lo - r1lo, hi - r1hi, prefix))
        return out


def lcp_intervals(lcp, nleaves):
    """Internal nodes of the LCP-interval tree.

    Returns ``(lo, hi, depth, parent, owner)``: node 0 is the root (depth 0,
    spanning every leaf); ``owner[h]`` is the node whose children meet at the
    boundary between leaves ``h`` and ``h + 1``.
    """
    lcp_l = lcp.tolist() if hasattr(lcp, "tolist") else list(lcp)
    lo = [0]
    hi = [nleaves - 1]
    depth = [0]
    parent = [-1]
    owner = [0] * max(nleaves - 1, 0)
    stack = [0]
    for i in range(1, nleaves):
        ell = lcp_l[i - 1]
        lb = i - 1
        pending = -1
        while ell < depth[stack[-1]]:
            node = stack.pop()
            hi[node] = i - 1
            lb = lo[node]
            if ell <= depth[stack[-1]]:
                parent[node] = stack[-1]
            else:
                pending = node
        if ell > depth[stack[-1]]:
            node = len(lo)
            lo.append(lb)
            hi.append(-1)
            depth.append(ell)
            parent.append(stack[-1])
            stack.append(node)
            if pending >= 0:
                parent[pending] = node
        owner[i - 1] = stack[-1]
    while len(stack) > 1:
        node = stack.pop()
        hi[node] = nleaves - 1
        parent[node] = stack[-1]
    return (np.asarray(lo, dtype=np.int64), np.asarray(hi, dtype=np.int64),
            np.asarray(depth, dtype=np.int64), np.asarray(parent, dtype=np.int64),
            np.asarray(owner, dtype=np.int64))


def _lcp_ranks(rmq, a, b):
    # |LCP| of the suffixes at ranks a < b
    return rmq._a[rmq.query(a, b - 1)]


def scq_parse(seq, sa, isa, lcp_rmq, pos_wm, rank_wm, src, i, j):
    """Greedy LZ77 phrases of ``seq[i..j]`` with nearest-source tie-breaking.

    Copy sources may start anywhere in ``[src, k)`` for the phrase at ``k``.

    ``pos_wm`` stores ``isa`` in position order and ``rank_wm`` stores ``sa``
    in rank order.  Returns three lists ``(F, L, C)``; ``C`` is -1 when the
    last copy reaches ``j``.
    """
    s = seq
    n = len(sa)
    fs, ls, cs = [], [], []
    k = i
    while k <= j:
        best = 0
        if k > src:
            r = int(isa[k])
            r1 = pos_wm.prev_value(src, k, r)
            if r1 >= 0:
                best = _lcp_ranks(lcp_rmq, r1, r)
            r2 = pos_wm.next_value(src, k, r + 1)
            if r2 >= 0:
                cand = _lcp_ranks(lcp_rmq, r, r2)
                if cand > best:
                    best = cand
        length = min(best, j - k + 1)
        if length == 0:
            fs.append(0)
            ls.append(0)
            cs.append(int(s[k]))
            k += 1
            continue
        lo = lcp_rmq.prev_less(r - 1, length) + 1
        hi = lcp_rmq.next_less(r, length)
        if hi > n - 1:
            hi = n - 1
        t = rank_wm.prev_value(lo, hi + 1, k)
        fs.append(k - t)
        ls.append(length)
        nxt = k + length
        if nxt <= j:
            cs.append(int(s[nxt]))
            k = nxt + 1
        else:
            cs.append(-1)
            k = nxt
    return fs, ls, cs


def virtual_parents(nodes, groups, subtree_end):
    """Parent (index into ``nodes``) of each entry in the tree induced by its group.

    ``nodes`` are preorder ids sorted by ``(group, node)``; the subtree of
    node ``v`` is ``[v, subtree_end[v])``.  Roots of a group get -1.
    """
    nd = nodes.tolist()
    gr = groups.tolist()
    se = subtree_end.tolist()
    out = [-1] * len(nd)
    stack = []
    for t, v in enumerate(nd):
        if t and gr[t] != gr[t - 1]:
            stack = []
        while stack and se[nd[stack[-1]]] <= v:
            stack.pop()
        if stack:
            out[t] = stack[-1]
        stack.append(t)
    return np.asarray(out, dtype=np.int64)
