"""Numpy-side table construction shared by the compiled and pure-Python kernels.

Everything here is vectorised and runs once per structure; the per-query
loops live in ``_ckernels.pyx`` / ``_pykernels.py``.
"""

import numpy as np

RMQ_BLOCK = 32
RMQ_SHIFT = 5


def block_rmq_tables(values):
    """Leftmost-min position per block of ``RMQ_BLOCK`` plus a sparse table
    over those block minima.  Returns ``(values, block_pos, sparse)`` where
    ``sparse[k, b]`` is the leftmost minimum over blocks ``b .. b + 2**k - 1``.
    """
    a = np.ascontiguousarray(values, dtype=np.int64)
    n = len(a)
    nblocks = (n + RMQ_BLOCK - 1) >> RMQ_SHIFT
    padded = np.full(nblocks * RMQ_BLOCK, np.iinfo(np.int64).max, dtype=np.int64)
    padded[:n] = a
    block_pos = (padded.reshape(nblocks, RMQ_BLOCK).argmin(axis=1)
                 + np.arange(nblocks) * RMQ_BLOCK).astype(np.int64)

    levels = max(1, nblocks.bit_length())
    sparse = np.zeros((levels, nblocks), dtype=np.int64)
    sparse[0] = block_pos
    for k in range(1, levels):
        half = 1 << (k - 1)
        prev = sparse[k - 1]
        cur = prev.copy()
        if nblocks > half:
            left = prev[:-half]
            right = prev[half:]
            cur[:-half] = np.where(a[right] < a[left], right, left)
        sparse[k] = cur
    return a, block_pos, sparse


def wavelet_levels(values, nbits):
    """Bit planes of a wavelet matrix over non-negative ``values``.

    Returns ``(words, cum, zeros)``: ``words[l]`` holds level ``l`` packed
    little-endian into uint64 words (one spare zero word at the end),
    ``cum[l, w]`` counts the ones in ``words[l, :w]`` and ``zeros[l]`` is the
    number of zero bits on level ``l``.  Level 0 is the most significant bit.
    """
    cur = np.ascontiguousarray(values, dtype=np.int64)
    n = len(cur)
    nwords = (n >> 6) + 1
    words = np.zeros((nbits, nwords), dtype=np.uint64)
    cum = np.zeros((nbits, nwords), dtype=np.int64)
    zeros = np.zeros(nbits, dtype=np.int64)
    for level in range(nbits):
        shift = nbits - 1 - level
        bits = ((cur >> shift) & 1).astype(np.uint8)
        padded = np.zeros(nwords * 64, dtype=np.uint8)
        padded[:n] = bits
        words[level] = np.packbits(padded, bitorder="little").view("<u8")
        cum[level, 1:] = np.cumsum(np.bitwise_count(words[level]), dtype=np.int64)[:-1]
        zero_mask = bits == 0
        zeros[level] = int(zero_mask.sum())
        cur = np.concatenate([cur[zero_mask], cur[~zero_mask]])
    return words, cum, zeros


def bits_for(universe):
    """Number of bit levels needed for values in ``[0, universe)``."""
    return max(1, int(universe - 1).bit_length())
