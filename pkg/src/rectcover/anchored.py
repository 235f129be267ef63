"""Minimum-area rectangle with a prescribed point on its top or bottom edge.

For the top case, candidate bottoms are visited in order of increasing
height; the x-sorted list of points between the two horizontals is grown by
insertion and scanned with a window of ``k`` consecutive points. Only the
windows containing ``q`` need scanning (any other window is dominated by
sliding it towards ``q``), so a round costs ``O(k)`` after an ``O(i)``
insertion, ``O(|Q|^2)`` overall.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from .geometry import AreaResult, PointSet, Rect, count_in

INF = math.inf


@njit(cache=True)
def _lex_less(a0, a1, a2, a3, a4, b0, b1, b2, b3, b4):
    if a0 != b0:
        return a0 < b0
    if a1 != b1:
        return a1 < b1
    if a2 != b2:
        return a2 < b2
    if a3 != b3:
        return a3 < b3
    return a4 < b4


@njit(cache=True)
def _phi_side(xs, ys, xk, yk, qi, k, top, bound):
    """Best rectangle with ``q = (xs[qi], ys[qi])`` on its top (``top``) or bottom edge.

    The arrays must be sorted by the x-order key ``xk``; ``yk`` breaks ties
    in y. Returns ``(area, xmin, xmax, ymin, ymax)``; area is inf when
    infeasible. Work that provably yields areas above ``bound`` is skipped, so
    results above ``bound`` are upper bounds only.
    """
    n = xs.shape[0]
    qy = ys[qi]
    mem = np.empty(n, np.int64)
    m = 0
    for j in range(n):
        if (top and ys[j] <= qy) or ((not top) and ys[j] >= qy):
            mem[m] = j
            m += 1
    best = np.inf
    bx0 = np.nan
    bx1 = np.nan
    by0 = np.nan
    by1 = np.nan
    if m < k:
        return best, bx0, bx1, by0, by1
    mem = mem[:m]

    # lower bound: narrowest k-window times the k-th smallest height
    w_lb = 0.0
    if k > 1:
        w_lb = np.inf
        for s in range(m - k + 1):
            w = xs[mem[s + k - 1]] - xs[mem[s]]
            if w < w_lb:
                w_lb = w
        if bound < np.inf:
            hs = np.empty(m, np.float64)
            for t in range(m):
                hs[t] = (qy - ys[mem[t]]) if top else (ys[mem[t]] - qy)
            if np.partition(hs, k - 1)[k - 1] * w_lb > bound:
                return best, bx0, bx1, by0, by1

    keys = np.empty(m, np.int64)
    kmin = 0
    for t in range(m):
        keys[t] = -yk[mem[t]] if top else yk[mem[t]]
        if keys[t] < kmin:
            kmin = keys[t]
    for t in range(m):
        if mem[t] == qi:
            keys[t] = kmin - 1
    anchors = mem[np.argsort(keys)]

    sx = np.empty(m, np.float64)
    skey = np.empty(m, np.int64)
    size = 0
    qpos = 0
    for t in range(m):
        j = anchors[t]
        key = xk[j]
        pos = size
        while pos > 0 and skey[pos - 1] > key:
            skey[pos] = skey[pos - 1]
            sx[pos] = sx[pos - 1]
            pos -= 1
        skey[pos] = key
        sx[pos] = xs[j]
        size += 1
        if t == 0:
            qpos = pos
        elif pos <= qpos:
            qpos += 1
        if size < k:
            continue
        if top:
            y0 = ys[j]
            y1 = qy
        else:
            y0 = qy
            y1 = ys[j]
        h = y1 - y0
        lim = best if best < bound else bound
        if h * w_lb > lim:
            break
        s0 = qpos - k + 1
        if s0 < 0:
            s0 = 0
        s1 = size - k
        if qpos < s1:
            s1 = qpos
        for s in range(s0, s1 + 1):
            lo = sx[s]
            hi = sx[s + k - 1]
            a = (hi - lo) * h
            if a < best or (a == best and _lex_less(a, lo, y0, hi, y1, best, bx0, by0, bx1, by1)):
                best = a
                bx0 = lo
                bx1 = hi
                by0 = y0
                by1 = y1
    return best, bx0, bx1, by0, by1


@njit(cache=True)
def _phi_both(xs, ys, xk, yk, qi, k, bound):
    a, x0, x1, y0, y1 = _phi_side(xs, ys, xk, yk, qi, k, True, bound)
    lim = a if a < bound else bound
    b, u0, u1, v0, v1 = _phi_side(xs, ys, xk, yk, qi, k, False, lim)
    if b < a or (b == a and _lex_less(b, u0, v0, u1, v1, a, x0, y0, x1, y1)):
        return b, u0, u1, v0, v1
    return a, x0, x1, y0, y1


def _to_result(Q: PointSet, out) -> AreaResult:
    area, x0, x1, y0, y1 = out
    if math.isinf(area):
        return AreaResult.infeasible()
    rect = Rect(float(x0), float(x1), float(y0), float(y1))
    return AreaResult(rect.area, rect, count_in(Q, rect))


def _prepare(Q: PointSet, q, k: int) -> int:
    if k < 1:
        raise ValueError("k must be >= 1")
    try:
        return Q.index_of(q)
    except KeyError:
        raise ValueError("q is not a point of Q") from None


def _sorted_arrays(Q: PointSet, qi: int):
    o = Q.rank_x
    return Q.xs[o], Q.ys[o], Q.pos_x[o], Q.pos_y[o], int(Q.pos_x[qi])


def phi_one_side(Q: PointSet, q, k: int, side: str) -> AreaResult:
    """Minimum-area rectangle with ``q`` on its ``side`` ("top"/"bottom") edge
    containing at least ``k`` points of ``Q``."""
    if side not in ("top", "bottom"):
        raise ValueError("side must be 'top' or 'bottom'")
    xs, ys, xk, yk, qi = _sorted_arrays(Q, _prepare(Q, q, k))
    return _to_result(Q, _phi_side(xs, ys, xk, yk, qi, k, side == "top", INF))


def phi(Q: PointSet, q, k: int) -> AreaResult:
    """Minimum area over rectangles with ``q`` on the top or bottom edge."""
    xs, ys, xk, yk, qi = _sorted_arrays(Q, _prepare(Q, q, k))
    return _to_result(Q, _phi_both(xs, ys, xk, yk, qi, k, INF))


def phi_all_k(Q: PointSet, q) -> list[AreaResult]:
    """``phi(Q, q, k)`` for ``k = 1 .. |Q|`` (entry ``k - 1``)."""
    xs, ys, xk, yk, qi = _sorted_arrays(Q, _prepare(Q, q, 1))
    return [_to_result(Q, _phi_both(xs, ys, xk, yk, qi, k, INF)) for k in range(1, len(Q) + 1)]
