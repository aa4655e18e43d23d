# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels.  Mirrors ``_pykernels`` call for call."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

from ._tables import block_rmq_tables, wavelet_levels

cnp.import_array()

BACKEND = "cython"

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

cdef enum:
    RMQ_SHIFT = 5
    RMQ_BLOCK = 32


def kasai(seq, sa, rank):
    cdef const int64_t[::1] s = np.ascontiguousarray(seq, dtype=np.int64)
    cdef const int64_t[::1] sa_v = np.ascontiguousarray(sa, dtype=np.int64)
    cdef const int64_t[::1] rk = np.ascontiguousarray(rank, dtype=np.int64)
    cdef Py_ssize_t n = s.shape[0]
    out = np.zeros(max(n - 1, 0), dtype=np.int64)
    cdef int64_t[::1] lcp = out
    cdef Py_ssize_t i, j, h = 0
    cdef int64_t r
    with nogil:
        for i in range(n):
            r = rk[i]
            if r > 0:
                j = sa_v[r - 1]
                while i + h < n and j + h < n and s[i + h] == s[j + h]:
                    h += 1
                lcp[r - 1] = h
                if h > 0:
                    h -= 1
            else:
                h = 0
    return out


cdef class BlockRmq:
    cdef readonly object values
    cdef readonly Py_ssize_t n
    cdef const int64_t[::1] _a
    cdef const int64_t[:, ::1] _sparse
    cdef Py_ssize_t _levels, _nblocks

    def __init__(self, values):
        a, block_pos, sparse = block_rmq_tables(values)
        self.values = a
        self.n = len(a)
        self._a = a
        self._sparse = np.ascontiguousarray(sparse)
        self._levels = sparse.shape[0]
        self._nblocks = sparse.shape[1]

    cdef inline Py_ssize_t _scan(self, Py_ssize_t i, Py_ssize_t j) nogil:
        cdef Py_ssize_t best = i, p
        cdef int64_t bv = self._a[i]
        for p in range(i + 1, j + 1):
            if self._a[p] < bv:
                bv = self._a[p]
                best = p
        return best

    cdef Py_ssize_t cquery(self, Py_ssize_t i, Py_ssize_t j) nogil:
        cdef Py_ssize_t bi = i >> RMQ_SHIFT, bj = j >> RMQ_SHIFT
        cdef Py_ssize_t best, mid, tail, k, left, right
        if bi == bj:
            return self._scan(i, j)
        best = self._scan(i, ((bi + 1) << RMQ_SHIFT) - 1)
        if bj - bi > 1:
            k = 63 - __builtin_clzll(<unsigned long long>(bj - bi - 1))
            left = self._sparse[k, bi + 1]
            right = self._sparse[k, bj - 1 - (1 << k) + 1]
            mid = right if self._a[right] < self._a[left] else left
            if self._a[mid] < self._a[best]:
                best = mid
        tail = self._scan(bj << RMQ_SHIFT, j)
        if self._a[tail] < self._a[best]:
            best = tail
        return best

    def query(self, Py_ssize_t i, Py_ssize_t j):
        return self.cquery(i, j)

    def query_many(self, const int64_t[::1] lo, const int64_t[::1] hi):
        cdef Py_ssize_t t, m = lo.shape[0]
        out = np.empty(m, dtype=np.int64)
        cdef int64_t[::1] o = out
        with nogil:
            for t in range(m):
                o[t] = self.cquery(lo[t], hi[t])
        return out

    cdef inline int64_t value(self, Py_ssize_t p) nogil:
        return self._a[p]

    def bounded(self, Py_ssize_t i, Py_ssize_t j, int64_t bound):
        cdef list out = []
        cdef list stack = [(i, j)]
        cdef Py_ssize_t lo, hi, p
        while stack:
            lo, hi = stack.pop()
            if lo > hi:
                continue
            p = self.cquery(lo, hi)
            if self._a[p] < bound:
                out.append(p)
                stack.append((p + 1, hi))
                stack.append((lo, p - 1))
        out.sort()
        return out

    cdef Py_ssize_t cprev_less(self, Py_ssize_t p, int64_t bound) nogil:
        cdef Py_ssize_t q, x, k, w, start, end
        if p < 0:
            return -1
        if p >= self.n:
            p = self.n - 1
        start = p & ~(<Py_ssize_t>RMQ_BLOCK - 1)
        q = p
        while q >= start:
            if self._a[q] < bound:
                return q
            q -= 1
        x = (p >> RMQ_SHIFT) - 1
        k = self._levels - 1
        while k >= 0:
            w = (<Py_ssize_t>1) << k
            if x - w + 1 >= 0 and self._a[self._sparse[k, x - w + 1]] >= bound:
                x -= w
            k -= 1
        if x < 0:
            return -1
        end = (x + 1) << RMQ_SHIFT
        if end > self.n:
            end = self.n
        q = end - 1
        while q >= (x << RMQ_SHIFT):
            if self._a[q] < bound:
                return q
            q -= 1
        return -1

    cdef Py_ssize_t cnext_less(self, Py_ssize_t p, int64_t bound) nogil:
        cdef Py_ssize_t q, x, k, w, end, n = self.n
        if p >= n:
            return n
        end = (p | (<Py_ssize_t>RMQ_BLOCK - 1)) + 1
        if end > n:
            end = n
        for q in range(p, end):
            if self._a[q] < bound:
                return q
        x = (p >> RMQ_SHIFT) + 1
        k = self._levels - 1
        while k >= 0:
            w = (<Py_ssize_t>1) << k
            if x + w - 1 < self._nblocks and self._a[self._sparse[k, x]] >= bound:
                x += w
            k -= 1
        if x >= self._nblocks:
            return n
        end = (x + 1) << RMQ_SHIFT
        if end > n:
            end = n
        for q in range(x << RMQ_SHIFT, end):
            if self._a[q] < bound:
                return q
        return n

    def prev_less(self, Py_ssize_t p, int64_t bound):
        return self.cprev_less(p, bound)

    def next_less(self, Py_ssize_t p, int64_t bound):
        return self.cnext_less(p, bound)


cdef extern from *:
    int __builtin_clzll(unsigned long long) nogil


cdef class WaveletMatrix:
    cdef readonly Py_ssize_t n
    cdef readonly int nbits
    cdef const uint64_t[:, ::1] _words
    cdef const int64_t[:, ::1] _cum
    cdef const int64_t[::1] _zeros
    cdef object _keep

    def __init__(self, values, int nbits):
        words, cum, zeros = wavelet_levels(values, nbits)
        self._keep = (words, cum, zeros)
        self.n = len(values)
        self.nbits = nbits
        self._words = words
        self._cum = cum
        self._zeros = zeros

    cdef inline Py_ssize_t _rank1(self, int level, Py_ssize_t i) nogil:
        cdef Py_ssize_t w = i >> 6
        cdef uint64_t mask = ((<uint64_t>1) << (i & 63)) - 1
        return self._cum[level, w] + __builtin_popcountll(self._words[level, w] & mask)

    cdef Py_ssize_t ccount_less(self, Py_ssize_t lo, Py_ssize_t hi, int64_t v) nogil:
        cdef Py_ssize_t res = 0, r1lo, r1hi, z
        cdef int level
        if v <= 0 or lo >= hi:
            return 0
        if v >= ((<int64_t>1) << self.nbits):
            return hi - lo
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

    cdef int64_t ckth(self, Py_ssize_t lo, Py_ssize_t hi, Py_ssize_t k) nogil:
        cdef int64_t val = 0
        cdef Py_ssize_t r1lo, r1hi, z_in, z
        cdef int level
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
                val |= (<int64_t>1) << (self.nbits - 1 - level)
        return val

    cdef int64_t cprev_value(self, Py_ssize_t lo, Py_ssize_t hi, int64_t v) nogil:
        cdef Py_ssize_t c = self.ccount_less(lo, hi, v)
        if c == 0:
            return -1
        return self.ckth(lo, hi, c - 1)

    cdef int64_t cnext_value(self, Py_ssize_t lo, Py_ssize_t hi, int64_t v) nogil:
        cdef Py_ssize_t c
        if lo >= hi:
            return -1
        c = self.ccount_less(lo, hi, v)
        if c == hi - lo:
            return -1
        return self.ckth(lo, hi, c)

    def count_less(self, Py_ssize_t lo, Py_ssize_t hi, int64_t v):
        return self.ccount_less(lo, hi, v)

    def count(self, Py_ssize_t lo, Py_ssize_t hi, int64_t vlo, int64_t vhi):
        if vlo >= vhi:
            return 0
        return self.ccount_less(lo, hi, vhi) - self.ccount_less(lo, hi, vlo)

    def kth(self, Py_ssize_t lo, Py_ssize_t hi, Py_ssize_t k):
        return self.ckth(lo, hi, k)

    def prev_value(self, Py_ssize_t lo, Py_ssize_t hi, int64_t v):
        return self.cprev_value(lo, hi, v)

    def next_value(self, Py_ssize_t lo, Py_ssize_t hi, int64_t v):
        return self.cnext_value(lo, hi, v)

    def report(self, Py_ssize_t lo, Py_ssize_t hi, int64_t vlo, int64_t vhi):
        cdef list out = []
        cdef Py_ssize_t[64] s_lo, s_hi
        cdef int64_t[64] s_prefix
        cdef int[64] s_level
        cdef int sp = 0, level, nbits = self.nbits
        cdef Py_ssize_t r1lo, r1hi, z, c
        cdef int64_t prefix, span
        if lo >= hi or vlo >= vhi:
            return out
        s_lo[0] = lo; s_hi[0] = hi; s_prefix[0] = 0; s_level[0] = 0
        sp = 1
        while sp > 0:
            sp -= 1
            lo = s_lo[sp]; hi = s_hi[sp]; prefix = s_prefix[sp]; level = s_level[sp]
            if lo >= hi:
                continue
            span = (<int64_t>1) << (nbits - level)
            if prefix >= vhi or prefix + span <= vlo:
                continue
            if level == nbits:
                for c in range(hi - lo):
                    out.append(prefix)
                continue
            r1lo = self._rank1(level, lo)
            r1hi = self._rank1(level, hi)
            z = self._zeros[level]
            s_lo[sp] = z + r1lo; s_hi[sp] = z + r1hi
            s_prefix[sp] = prefix | (span >> 1); s_level[sp] = level + 1
            sp += 1
            s_lo[sp] = lo - r1lo; s_hi[sp] = hi - r1hi
            s_prefix[sp] = prefix; s_level[sp] = level + 1
            sp += 1
        return out


def lcp_intervals(lcp, Py_ssize_t nleaves):
    cdef const int64_t[::1] lv = np.ascontiguousarray(lcp, dtype=np.int64)
    cdef Py_ssize_t cap = max(nleaves, 1)
    lo_a = np.zeros(cap, dtype=np.int64)
    hi_a = np.zeros(cap, dtype=np.int64)
    depth_a = np.zeros(cap, dtype=np.int64)
    parent_a = np.zeros(cap, dtype=np.int64)
    owner_a = np.zeros(max(nleaves - 1, 0), dtype=np.int64)
    stack_a = np.zeros(cap + 1, dtype=np.int64)
    cdef int64_t[::1] lo = lo_a, hi = hi_a, depth = depth_a, parent = parent_a
    cdef int64_t[::1] owner = owner_a, stack = stack_a
    cdef Py_ssize_t count = 1, sp = 1, i, lb, node, pending
    cdef int64_t ell
    lo[0] = 0; hi[0] = nleaves - 1; depth[0] = 0; parent[0] = -1
    stack[0] = 0
    with nogil:
        for i in range(1, nleaves):
            ell = lv[i - 1]
            lb = i - 1
            pending = -1
            while ell < depth[stack[sp - 1]]:
                sp -= 1
                node = stack[sp]
                hi[node] = i - 1
                lb = lo[node]
                if ell <= depth[stack[sp - 1]]:
                    parent[node] = stack[sp - 1]
                else:
                    pending = node
            if ell > depth[stack[sp - 1]]:
                node = count
                count += 1
                lo[node] = lb
                hi[node] = -1
                depth[node] = ell
                parent[node] = stack[sp - 1]
                stack[sp] = node
                sp += 1
                if pending >= 0:
                    parent[pending] = node
            owner[i - 1] = stack[sp - 1]
        while sp > 1:
            sp -= 1
            node = stack[sp]
            hi[node] = nleaves - 1
            parent[node] = stack[sp - 1]
    return lo_a[:count].copy(), hi_a[:count].copy(), depth_a[:count].copy(), parent_a[:count].copy(), owner_a


cdef inline int64_t _lcp_ranks(BlockRmq rmq, Py_ssize_t a, Py_ssize_t b) nogil:
    return rmq._a[rmq.cquery(a, b - 1)]


def scq_parse(seq, sa, isa, BlockRmq lcp_rmq, WaveletMatrix pos_wm,
              WaveletMatrix rank_wm, Py_ssize_t src, Py_ssize_t i, Py_ssize_t j):
    cdef const int64_t[::1] s = np.ascontiguousarray(seq, dtype=np.int64)
    cdef const int64_t[::1] isa_v = np.ascontiguousarray(isa, dtype=np.int64)
    cdef Py_ssize_t n = len(sa)
    cap = j - i + 1
    f_a = np.zeros(cap, dtype=np.int64)
    l_a = np.zeros(cap, dtype=np.int64)
    c_a = np.zeros(cap, dtype=np.int64)
    cdef int64_t[::1] fs = f_a, ls = l_a, cs = c_a
    cdef Py_ssize_t k = i, count = 0, r = 0, lo, hi, nxt
    cdef int64_t best, cand, r1, r2, length, t
    with nogil:
        while k <= j:
            best = 0
            if k > src:
                r = isa_v[k]
                r1 = pos_wm.cprev_value(src, k, r)
                if r1 >= 0:
                    best = _lcp_ranks(lcp_rmq, r1, r)
                r2 = pos_wm.cnext_value(src, k, r + 1)
                if r2 >= 0:
                    cand = _lcp_ranks(lcp_rmq, r, r2)
                    if cand > best:
                        best = cand
            length = best
            if length > j - k + 1:
                length = j - k + 1
            if length == 0:
                fs[count] = 0
                ls[count] = 0
                cs[count] = s[k]
                count += 1
                k += 1
                continue
            lo = lcp_rmq.cprev_less(r - 1, length) + 1
            hi = lcp_rmq.cnext_less(r, length)
            if hi > n - 1:
                hi = n - 1
            t = rank_wm.cprev_value(lo, hi + 1, k)
            fs[count] = k - t
            ls[count] = length
            nxt = k + length
            if nxt <= j:
                cs[count] = s[nxt]
                k = nxt + 1
            else:
                cs[count] = -1
                k = nxt
            count += 1
    return f_a[:count].tolist(), l_a[:count].tolist(), c_a[:count].tolist()


def virtual_parents(nodes, groups, subtree_end):
    cdef const int64_t[::1] nd = np.ascontiguousarray(nodes, dtype=np.int64)
    cdef const int64_t[::1] gr = np.ascontiguousarray(groups, dtype=np.int64)
    cdef const int64_t[::1] se = np.ascontiguousarray(subtree_end, dtype=np.int64)
    cdef Py_ssize_t m = nd.shape[0], t, sp = 0
    out = np.full(m, -1, dtype=np.int64)
    stack_a = np.zeros(m + 1, dtype=np.int64)
    cdef int64_t[::1] par = out, stack = stack_a
    with nogil:
        for t in range(m):
            if t > 0 and gr[t] != gr[t - 1]:
                sp = 0
            while sp > 0 and se[nd[stack[sp - 1]]] <= nd[t]:
                sp -= 1
            if sp > 0:
                par[t] = stack[sp - 1]
            stack[sp] = t
            sp += 1
    return out
