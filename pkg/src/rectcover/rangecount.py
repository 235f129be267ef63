"""Static orthogonal range counting.

A merge-sort tree: points sorted by x form the leaves, and level ``l`` stores
the y-values of each aligned block of ``2**l`` leaves in sorted order. A query
splits its x-interval into ``O(log n)`` canonical blocks and binary-searches
each one, for ``O(log^2 n)`` per rectangle. Boundaries are closed.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .geometry import PointSet, Rect


@njit(cache=True)
def _count_many(xs, levels, rects):
    nq = rects.shape[0]
    out = np.zeros(nq, np.int64)
    for q in range(nq):
        x0 = rects[q, 0]
        x1 = rects[q, 1]
        y0 = rects[q, 2]
        y1 = rects[q, 3]
        lo = np.searchsorted(xs, x0, side="left")
        hi = np.searchsorted(xs, x1, side="right")
        total = 0
        lev = 0
        while lo < hi:
            width = 1 << lev
            if lo & 1:
                blk = levels[lev, lo * width:(lo + 1) * width]
                total += np.searchsorted(blk, y1, side="right") - np.searchsorted(blk, y0, side="left")
                lo += 1
            if hi & 1:
                hi -= 1
                blk = levels[lev, hi * width:(hi + 1) * width]
                total += np.searchsorted(blk, y1, side="right") - np.searchsorted(blk, y0, side="left")
            lo >>= 1
            hi >>= 1
            lev += 1
        out[q] = total
    return out


class CountStructure:
    """Immutable counting index over a fixed point set."""

    def __init__(self, ps: PointSet):
        n = len(ps)
        self.n = n
        size = 1
        while size < max(n, 1):
            size *= 2
        order = np.argsort(ps.xs, kind="stable")
        self.xs = ps.xs[order].copy()
        ys = np.full(size, np.inf)
        ys[:n] = ps.ys[order]
        depth = size.bit_length()
        levels = np.empty((depth, size))
        for lev in range(depth):
            levels[lev] = np.sort(ys.reshape(-1, 1 << lev), axis=1).ravel()
        self.levels = levels
        self.xs.flags.writeable = False
        self.levels.flags.writeable = False

    def count(self, r: Rect) -> int:
        return int(self.count_many(np.array([[r.xmin, r.xmax, r.ymin, r.ymax]]))[0])

    def count_many(self, rects) -> np.ndarray:
        """Counts for an ``(m, 4)`` array of ``(xmin, xmax, ymin, ymax)`` rows."""
        rects = np.ascontiguousarray(rects, dtype=np.float64).reshape(-1, 4)
        if self.n == 0:
            return np.zeros(rects.shape[0], np.int64)
        return _count_many(self.xs, self.levels, rects)


def build(ps: PointSet) -> CountStructure:
    return CountStructure(ps)


def count(cs: CountStructure, r: Rect) -> int:
    return cs.count(r)
