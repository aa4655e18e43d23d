"""LZ77 parsing, conditional parsing, substring compression queries and the
primary-occurrence index over an LZ77 parse.

A phrase ``(F, L, C)`` copies ``L`` symbols starting ``F`` positions back
(the copy may overlap itself) and then appends the literal ``C``; ``C`` is
``None`` when the copy reaches the end of the input.  Among equally long
copies the nearest source is taken, which makes the parse unique.

Parsing is driven by one suffix array: the longest previous factor at ``k``
is the better of the two rank-space neighbours of ``k`` among the positions
before ``k`` (two range successor queries on the points ``(i, isa[i])``),
and its nearest occurrence is the largest position below ``k`` in the rank
interval sharing that prefix.
"""

import bisect
import heapq
import struct
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from ._tables import bits_for
from .grid import ABOVE, BELOW, RankGrid2
from .text import SuffixIndex, as_bytes


@dataclass
class LZParse:
    phrases: list = field(default_factory=list)
    source_length: int = 0

    def __len__(self):
        return len(self.phrases)

    def __iter__(self):
        return iter(self.phrases)

    def starts(self):
        """1-based phrase starts ``u(1..c)`` followed by ``n + 1``."""
        out = [1]
        for _, length, _ in self.phrases:
            out.append(out[-1] + length + 1)
        if self.phrases and self.phrases[-1][2] is None:
            out[-1] -= 1
        return out


def lz_decompress(p, context=b""):
    """Expand a parse; ``context`` is the text a conditional parse was made against."""
    context = as_bytes(context)
    base = len(context) + 1 if context else 0
    out = bytearray(context + b"\0") if context else bytearray()
    last = len(p.phrases) - 1
    for idx, (f, length, c) in enumerate(p.phrases):
        if f < 0 or length < 0:
            raise ValueError(f"phrase {idx + 1}: negative field")
        if length:
            if f == 0 or f > len(out):
                raise ValueError(f"phrase {idx + 1}: source before the start of the text")
            start = len(out) - f
            for t in range(length):
                out.append(out[start + t])
        elif f:
            raise ValueError(f"phrase {idx + 1}: distance without a copy")
        if c is None:
            if idx != last:
                raise ValueError(f"phrase {idx + 1}: missing literal before the last phrase")
        else:
            out.append(c)
    if p.source_length and len(out) - base != p.source_length:
        raise ValueError(f"parse expands to {len(out) - base} symbols, expected {p.source_length}")
    return bytes(out[base:])


def _phrases(fs, ls, cs):
    return [(int(f), int(length), None if c < 0 else int(c)) for f, length, c in zip(fs, ls, cs)]


class ScqIndex:
    """Suffix array of ``S`` plus the point set ``(i, isa[i])``."""

    def __init__(self, s, _codes=None, sa=None):
        self.text = as_bytes(s)
        codes = _codes if _codes is not None else np.frombuffer(self.text, dtype=np.uint8).astype(np.int64)
        if len(codes) == 0:
            raise ValueError("empty text")
        self.sidx = SuffixIndex(codes, sa=sa)
        n = len(codes)
        self.n = n
        self.pos_grid = RankGrid2(np.arange(1, n + 1), self.sidx._isa + 1, permutation=True)
        self._pos_wm = self.pos_grid._wm           # isa (0-based) in position order
        self._rank_wm = kernels.WaveletMatrix(self.sidx._sa, bits_for(n))

    def _parse(self, src, i, j):
        idx = self.sidx
        return kernels.scq_parse(idx.seq, idx._sa, idx._isa, idx._lcp_core,
                                 self._pos_wm, self._rank_wm, src, i, j)

    def ilcp(self, k, l, r):
        """``(t, len)``: the ``t`` in ``[l, r]`` whose suffix shares the longest
        prefix with suffix ``k``; the lexicographically smaller neighbour wins ties."""
        n = self.n
        if not (1 <= l <= r <= n) or not (1 <= k <= n):
            raise ValueError(f"invalid ILCP query ({k}, {l}, {r})")
        if l <= k <= r:
            return k, n - k + 1
        y = self.sidx.rank_of(k)
        below = self.pos_grid.range_successor_y(l, r, y - 1, BELOW)
        above = self.pos_grid.range_successor_y(l, r, y + 1, ABOVE)
        best = None
        for cand in (below, above):
            if cand is None:
                continue
            length = self.sidx.lcp_len(k, cand[0])
            if best is None or length > best[1]:
                best = (cand[0], length)
        return best

    def scq(self, i, j):
        """LZ77 parse of ``S[i..j]``."""
        if not (1 <= i <= j <= self.n):
            raise ValueError(f"invalid substring range [{i}, {j}]")
        return LZParse(_phrases(*self._parse(i - 1, i - 1, j - 1)), j - i + 1)


def build_scq_index(s):
    return ScqIndex(s)


def ilcp(idx, k, l, r):
    return idx.ilcp(k, l, r)


def scq(idx, i, j):
    return idx.scq(i, j)


def lz_parse(s):
    s = as_bytes(s)
    if not s:
        return LZParse([], 0)
    return ScqIndex(s).scq(1, len(s))


def lz_conditional(s, t):
    """Parse of ``s`` whose phrases may also copy from the context ``t``.

    Equals the ``s`` part of the parse of ``t + sep + s`` for a separator
    smaller than every symbol (symbols are shifted up by one internally).
    """
    s, t = as_bytes(s), as_bytes(t)
    if not s:
        return LZParse([], 0)
    if not t:
        return lz_parse(s)
    codes = np.frombuffer(t + b"\0" + s, dtype=np.uint8).astype(np.int64) + 1
    codes[len(t)] = 0
    idx = ScqIndex(b"", _codes=codes)
    start = len(t) + 1
    fs, ls, cs = idx._parse(0, start, len(codes) - 1)
    return LZParse(_phrases(fs, ls, [c - 1 if c >= 0 else -1 for c in cs]), len(s))


# -- serialization -----------------------------------------------------------

_RECORD = struct.Struct("<IIBB")


def serialize_parse(p):
    """Records of little-endian 32-bit F and L, a presence flag and the literal."""
    out = bytearray()
    for f, length, c in p.phrases:
        out += _RECORD.pack(f, length, 0 if c is None else 1, 0 if c is None else c)
    return bytes(out)


def deserialize_parse(data, source_length=0):
    if len(data) % _RECORD.size:
        raise ValueError("truncated parse records")
    phrases = [(f, length, c if flag else None) for f, length, flag, c in _RECORD.iter_unpack(data)]
    return LZParse(phrases, source_length)


# -- primary occurrences -----------------------------------------------------

class Lz77Index:
    """Text plus its LZ77 parse, indexed for primary occurrences.

    An occurrence ``[p, p + m - 1]`` is primary when it contains the last
    symbol of some phrase.  Splitting the pattern after ``q_j``, where
    ``p + j - 1`` is the end of the phrase ``p`` starts in, ``q_j .. q_1`` is
    a prefix of that phrase reversed and ``q_{j+1} .. q_m`` is a prefix of
    the suffix starting right after the phrase.  Each primary occurrence is
    therefore found for exactly one split.
    """

    def __init__(self, t, sa=None):
        self.text = as_bytes(t)
        if not self.text:
            raise ValueError("empty text")
        self.scq_index = ScqIndex(self.text, sa=sa)
        self.sidx = self.scq_index.sidx
        self.parse = self.scq_index.scq(1, len(self.text))
        n = len(self.text)
        self.n = n
        u = self.parse.starts()
        self.u = u
        c = len(self.parse)
        text = self.text
        rev = [text[u[i]-1: u[i + 1]-1][::-1] for i in range(c)]
        self.rev_phrase_order = sorted(range(c), key=rev.__getitem__)        # pi, 0-based
        self.rev_phrases = [rev[i] for i in self.rev_phrase_order]
        pi_inv = np.empty(c, dtype=np.int64)
        pi_inv[self.rev_phrase_order] = np.arange(1, c + 1)
        nxt = np.asarray(u[1:], dtype=np.int64)                              # u(i+1)
        ext = np.empty(n + 2, dtype=np.int64)
        ext[1:n + 1] = self.sidx._isa + 2
        ext[n + 1] = 1
        self.boundary_suffix_ranks = ext[nxt]
        self.occ_grid = RankGrid2(self.boundary_suffix_ranks, pi_inv, labels=nxt, permutation=True)
        self._next_start = nxt

    def _rev_range(self, pat):
        key = lambda s: s[: len(pat)]
        lo = bisect.bisect_left(self.rev_phrases, pat, key=key)
        hi = bisect.bisect_right(self.rev_phrases, pat, key=key)
        return (lo + 1, hi) if lo < hi else None

    def _suffix_range(self, pat):
        if not pat:
            return 1, self.n + 1
        rng = self.sidx.sa_range_codes(list(pat))
        return None if rng.empty else (rng.lo + 1, rng.hi + 1)

    def primary_occurrences(self, q):
        q = as_bytes(q)
        if not q:
            raise ValueError("empty pattern")
        out = []
        for j in range(1, len(q) + 1):
            left = self._rev_range(q[:j][::-1])
            if left is None:
                continue
            right = self._suffix_range(q[j:])
            if right is None:
                continue
            for pid in self.occ_grid.range_report_ids(right[0], right[1], left[0], left[1]):
                out.append(int(self._next_start[pid]) - j)
        return sorted(out)

    def all_occurrences(self, q):
        """Every occurrence: primary ones plus copies found by scanning phrase sources."""
        q = as_bytes(q)
        m = len(q)
        heap = self.primary_occurrences(q)
        seen = set(heap)
        heapq.heapify(heap)
        sources = []
        for i, (f, length, _) in enumerate(self.parse.phrases):
            if length:
                sources.append((self.u[i] - f, length, self.u[i]))
        while heap:
            p = heapq.heappop(heap)
            for src, length, dst in sources:
                if src <= p and p + m <= src + length:
                    hit = dst + (p - src)
                    if hit not in seen:
                        seen.add(hit)
                        heapq.heappush(heap, hit)
        return sorted(seen)


def build_lz77_index(t):
    return Lz77Index(t)


def primary_occurrences(idx, q):
    return idx.primary_occurrences(q)
