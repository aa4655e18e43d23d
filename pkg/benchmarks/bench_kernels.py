"""Compiled kernels versus their pure-Python twins.

    python benchmarks/bench_kernels.py [--n 200000] [--queries 20000]

Prints one line per kernel with the time of each backend and the speedup.
"""

import argparse
import time

import numpy as np

from orsti import _pykernels
from orsti._tables import bits_for
from orsti.text import suffix_array

try:
    from orsti import _ckernels
except ImportError:
    _ckernels = None


def clock(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def workloads(k, seq, sa, isa, lcp, qs):
    n = len(seq)
    nb = bits_for(n)
    rmq = k.BlockRmq(lcp)
    wm = k.WaveletMatrix(isa, nb)
    rank_wm = k.WaveletMatrix(sa, nb)
    lo, hi = qs

    def rmq_queries():
        for i, j in zip(lo, hi):
            rmq.query(i, j)

    def wm_counts():
        for i, j in zip(lo, hi):
            wm.count(i, j + 1, i, j)

    def wm_successors():
        for i, j in zip(lo, hi):
            wm.prev_value(i, j + 1, n // 2)
            wm.next_value(i, j + 1, n // 2)

    return {
        "kasai": lambda: k.kasai(seq, sa, isa),
        "rmq build": lambda: k.BlockRmq(lcp),
        "rmq query": rmq_queries,
        "wavelet count": wm_counts,
        "wavelet successor": wm_successors,
        "lz parse": lambda: k.scq_parse(seq, sa, isa, rmq, wm, rank_wm, 0, 0, n - 1),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200_000)
    ap.add_argument("--queries", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    seq = rng.integers(0, 4, args.n).astype(np.int64)
    sa = suffix_array(seq)
    isa = np.empty_like(sa)
    isa[sa] = np.arange(len(sa))
    lcp = _pykernels.kasai(seq, sa, isa)
    a = rng.integers(0, len(lcp), args.queries)
    b = rng.integers(0, len(lcp), args.queries)
    qs = (np.minimum(a, b).tolist(), np.maximum(a, b).tolist())

    print(f"n={args.n} queries={args.queries}")
    if _ckernels is None:
        print("compiled extension not built; only the Python backend is available")
    py_w = workloads(_pykernels, seq, sa, isa, lcp, qs)
    c_w = workloads(_ckernels, seq, sa, isa, lcp, qs) if _ckernels else {}
    print(f"{'kernel':<20}{'python s':>10}{'cython s':>10}{'speedup':>9}")
    for name, fn in py_w.items():
        tp = clock(fn)
        if name in c_w:
            tc = clock(c_w[name])
            print(f"{name:<20}{tp:>10.3f}{tc:>10.3f}{tp / tc:>8.1f}x")
        else:
            print(f"{name:<20}{tp:>10.3f}{'-':>10}{'-':>9}")


if __name__ == "__main__":
    main()
