"""Range-minimum queries over a static integer array.

Positions are 1-based.  ``rmq`` returns the position of the leftmost
minimum; ``bounded_report`` lists every position in a range whose value is
strictly below a bound by recursing on the minimum, so it performs one RMQ
per reported position plus one per empty probe.
"""

import numpy as np

from ._backend import kernels


class RmqStructure:
    def __init__(self, values):
        a = np.asarray(values, dtype=np.int64)
        if a.ndim != 1 or len(a) == 0:
            raise ValueError("RMQ needs a non-empty 1-D array")
        self._core = kernels.BlockRmq(a)
        self.values = self._core.values
        self.n = len(a)

    def _check(self, i, j):
        if not (1 <= i <= j <= self.n):
            raise ValueError(f"invalid range [{i}, {j}] for array of length {self.n}")

    def rmq(self, i, j):
        self._check(i, j)
        return self._core.query(i - 1, j - 1) + 1

    def bounded_report(self, i, j, b):
        self._check(i, j)
        return [p + 1 for p in self._core.bounded(i - 1, j - 1, b)]


def build_rmq(a):
    return RmqStructure(a)


def rmq(s, i, j):
    return s.rmq(i, j)


def bounded_report(s, i, j, b):
    return s.bounded_report(i, j, b)
