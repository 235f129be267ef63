"""Brute-force ground truth.

Every optimum is attained by a rectangle whose sides pass through point
coordinates (plus the split line for the crossing variant), so enumerating
all coordinate pairs in x and in y is exhaustive. Counts come from a 2-D
prefix-sum grid; everything is vectorised over the ``O(n^2) x O(n^2)``
candidate table.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .geometry import AreaResult, Point, PointSet, Rect, count_in

INF = math.inf


def _pairs(vals: np.ndarray):
    i, j = np.triu_indices(vals.shape[0])
    return i, j


def _grid(xs, ys, ux, uy):
    gx = np.searchsorted(ux, xs)
    gy = np.searchsorted(uy, ys)
    grid = np.zeros((ux.shape[0] + 1, uy.shape[0] + 1), dtype=np.int64)
    np.add.at(grid, (gx + 1, gy + 1), 1)
    return grid.cumsum(0).cumsum(1)


def _table(xs, ys, ux, uy, xi=None, xj=None, ya=None, yb=None):
    """Counts and areas of ``[ux[xi], ux[xj]] x [uy[ya], uy[yb]]`` for all
    combinations of the given x-pairs and y-pairs."""
    if xi is None:
        xi, xj = _pairs(ux)
    if ya is None:
        ya, yb = _pairs(uy)
    c = _grid(xs, ys, ux, uy)
    slab = c[xj + 1, :] - c[xi, :]  # (px, |uy|+1)
    counts = slab[:, yb + 1] - slab[:, ya]
    areas = (ux[xj] - ux[xi])[:, None] * (uy[yb] - uy[ya])[None, :]
    return counts, areas, (xi, xj, ya, yb)


def _pick(mask, areas, ux, uy, pairs):
    """Minimum-area entry under ``mask`` with the deterministic tie rule."""
    if not mask.any():
        return None
    xi, xj, ya, yb = pairs
    masked = np.where(mask, areas, np.inf)
    best = masked.min()
    r, c = np.nonzero(masked == best)
    cand = np.column_stack([ux[xi[r]], uy[ya[c]], ux[xj[r]], uy[yb[c]]])
    o = np.lexsort((cand[:, 3], cand[:, 2], cand[:, 1], cand[:, 0]))[0]
    x0, y0, x1, y1 = cand[o]
    return Rect(float(x0), float(x1), float(y0), float(y1))


def _check_k(ps: PointSet, k: int) -> None:
    if not 1 <= k <= len(ps):
        raise ValueError(f"k={k} out of range [1, {len(ps)}]")


def min_area_arrays(xs: np.ndarray, ys: np.ndarray, k: int):
    """Array-level exact solve: ``(area, xmin, xmax, ymin, ymax)`` or inf."""
    if k > xs.shape[0]:
        return INF, np.nan, np.nan, np.nan, np.nan
    ux, uy = np.unique(xs), np.unique(ys)
    counts, areas, pairs = _table(xs, ys, ux, uy)
    rect = _pick(counts >= k, areas, ux, uy, pairs)
    return rect.area, rect.xmin, rect.xmax, rect.ymin, rect.ymax


def oracle_min_area(ps: PointSet, k: int) -> AreaResult:
    _check_k(ps, k)
    area, x0, x1, y0, y1 = min_area_arrays(ps.xs, ps.ys, k)
    rect = Rect(float(x0), float(x1), float(y0), float(y1))
    return AreaResult(rect.area, rect, count_in(ps, rect))


def oracle_min_area_table(ps: PointSet) -> np.ndarray:
    """``table[k]`` = optimal area for covering ``k`` points, ``k = 0..n``."""
    n = len(ps)
    table = np.full(n + 1, INF)
    if n == 0:
        return table
    ux, uy = np.unique(ps.xs), np.unique(ps.ys)
    counts, areas, _ = _table(ps.xs, ps.ys, ux, uy)
    per = np.full(n + 1, INF)
    np.minimum.at(per, counts.ravel(), areas.ravel())
    table[:] = np.minimum.accumulate(per[::-1])[::-1]
    table[0] = 0.0
    return table


def oracle_min_area_crossing(ps: PointSet, line, k: int) -> AreaResult:
    """Minimum area over rectangles meeting the horizontal ``line``."""
    _check_k(ps, k)
    ly = float(line.y)
    ux = np.unique(ps.xs)
    uy = np.unique(np.append(ps.ys, ly))
    counts, areas, pairs = _table(ps.xs, ps.ys, ux, uy)
    _, _, ya, yb = pairs
    cross = (uy[ya] <= ly) & (uy[yb] >= ly)
    rect = _pick((counts >= k) & cross[None, :], areas, ux, uy, pairs)
    return AreaResult(rect.area, rect, count_in(ps, rect))


def oracle_max_points(ps: PointSet, alpha: float) -> int:
    """Largest ``k`` whose optimal covering area is at most ``alpha``."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    table = oracle_min_area_table(ps)
    return int(np.flatnonzero(table <= alpha).max())


def oracle_phi(Q: PointSet, q, k: int) -> AreaResult:
    """Anchored optimum: ``q`` on the top or bottom edge, ``q_x`` inside."""
    if k < 1:
        raise ValueError("k must be >= 1")
    try:
        Q.index_of(q)
    except KeyError:
        raise ValueError("q is not a point of Q") from None
    ux, uy = np.unique(Q.xs), np.unique(Q.ys)
    xi, xj = _pairs(ux)
    keep = (ux[xi] <= q.x) & (ux[xj] >= q.x)
    xi, xj = xi[keep], xj[keep]
    ya, yb = _pairs(uy)
    counts, areas, pairs = _table(Q.xs, Q.ys, ux, uy, xi, xj, ya, yb)
    anchored = (uy[ya] == q.y) | (uy[yb] == q.y)
    rect = _pick((counts >= k) & anchored[None, :], areas, ux, uy, pairs)
    if rect is None:
        return AreaResult.infeasible()
    return AreaResult(rect.area, rect, count_in(Q, rect))


def subset_min_area(ps: PointSet, k: int) -> float:
    """Slowest possible reference: bounding boxes of all ``k``-subsets."""
    _check_k(ps, k)
    best = INF
    for combo in itertools.combinations(range(len(ps)), k):
        c = list(combo)
        xs, ys = ps.xs[c], ps.ys[c]
        best = min(best, (xs.max() - xs.min()) * (ys.max() - ys.min()))
    return best


def naive_k_extreme(A: PointSet, B: PointSet, k: int, orientation: str = "NE") -> list[list[Point]]:
    """Quadratic reference for batched reporting: filter, sort, truncate."""
    sx, sy = {"NE": (1, 1), "NW": (-1, 1), "SE": (1, -1), "SW": (-1, -1)}[orientation]
    lists = []
    for b in B:
        inside = [a for a in A if sx * a.x >= sx * b.x and sy * a.y >= sy * b.y]
        inside.sort(key=lambda a: (sx * a.x, a.id))
        lists.append(inside[:k])
    return lists
