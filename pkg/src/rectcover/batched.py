"""Batched k-extreme reporting in 2-sided (quadrant) rectangles.

For every anchor ``b`` in ``B`` and the quadrant ``[b_x, inf) x [b_y, inf)``
report the ``k`` points of ``A`` inside it with smallest x. The sweep runs
left to right; queries that have not yet collected ``k`` points sit in a
linked list ordered by ``b_y`` (insertion position found with a Fenwick tree),
so each arriving point walks exactly the queries that receive it.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from numba import njit

from .geometry import Point, PointSet

ORIENTATIONS = ("NE", "NW", "SE", "SW")
_SIGNS = {"NE": (1.0, 1.0), "NW": (-1.0, 1.0), "SE": (1.0, -1.0), "SW": (-1.0, -1.0)}


@njit(cache=True)
def _sweep(ev_kind, ev_idx, ay, by, b_slot, slot_b, k):
    nb = b_slot.shape[0]
    out = np.full((nb, k), -1, np.int64)
    cnt = np.zeros(nb, np.int64)
    fen = np.zeros(nb + 1, np.int64)
    nxt = np.full(nb, -1, np.int64)
    prv = np.full(nb, -1, np.int64)
    head = -1
    top = 1
    while top * 2 <= nb:
        top *= 2
    for e in range(ev_kind.shape[0]):
        i = ev_idx[e]
        if ev_kind[e] == 0:
            s = b_slot[i]
            c = 0
            j = s
            while j > 0:
                c += fen[j]
                j -= j & (-j)
            if c == 0:
                nxt[s] = head
                prv[s] = -1
                if head != -1:
                    prv[head] = s
                head = s
            else:
                pos = 0
                rem = c
                step = top
                while step > 0:
                    if pos + step <= nb and fen[pos + step] < rem:
                        pos += step
                        rem -= fen[pos]
                    step >>= 1
                pred = pos
                nx = nxt[pred]
                nxt[s] = nx
                prv[s] = pred
                nxt[pred] = s
                if nx != -1:
                    prv[nx] = s
            j = s + 1
            while j <= nb:
                fen[j] += 1
                j += j & (-j)
        else:
            yk = ay[i]
            s = head
            while s != -1:
                b = slot_b[s]
                if by[b] > yk:
                    break
                nx = nxt[s]
                out[b, cnt[b]] = i
                cnt[b] += 1
                if cnt[b] == k:
                    # query is full: leave the active list
                    p = prv[s]
                    if p != -1:
                        nxt[p] = nx
                    else:
                        head = nx
                    if nx != -1:
                        prv[nx] = p
                    j = s + 1
                    while j <= nb:
                        fen[j] -= 1
                        j += j & (-j)
                s = nx
    return out, cnt


def k_extreme_indices(ax, ay, bx, by, k: int, a_tie=None):
    """Array-level NE sweep.

    Returns ``(out, cnt)``: ``out[j, :cnt[j]]`` are indices into ``A`` of the
    points in ``[bx[j], inf) x [by[j], inf)`` with smallest ``(ax, a_tie)``,
    in increasing order. Containment is closed; at equal x, anchors are
    inserted before points are reported, so a point shared by both sets
    reports itself.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    ax = np.asarray(ax)
    ay = np.asarray(ay, dtype=np.float64)
    bx = np.asarray(bx)
    by = np.asarray(by, dtype=np.float64)
    na, nb = ax.shape[0], bx.shape[0]
    if a_tie is None:
        a_tie = np.arange(na)
    ex = np.concatenate([bx.astype(np.float64), ax.astype(np.float64)])
    kind = np.concatenate([np.zeros(nb, np.int64), np.ones(na, np.int64)])
    tie = np.concatenate([np.zeros(nb, np.int64), np.asarray(a_tie, dtype=np.int64)])
    idx = np.concatenate([np.arange(nb), np.arange(na)]).astype(np.int64)
    order = np.lexsort((tie, kind, ex))
    slot_b = np.argsort(by, kind="stable").astype(np.int64)
    b_slot = np.empty(nb, np.int64)
    b_slot[slot_b] = np.arange(nb)
    return _sweep(kind[order], idx[order], ay, by, b_slot, slot_b, int(k))


def reflect(ps: PointSet, orientation: str) -> PointSet:
    """Map ``orientation``'s quadrant onto NE by negating coordinates; ids kept."""
    if orientation not in _SIGNS:
        raise ValueError(f"unknown orientation {orientation!r}")
    sx, sy = _SIGNS[orientation]
    if sx == 1.0 and sy == 1.0:
        return ps
    return PointSet(sx * ps.xs, sy * ps.ys, ps.ids)


class ReportResult(Sequence):
    """Per-anchor lists of reported points, ``result[j]`` for ``B[j]``."""

    def __init__(self, lists: list[tuple[Point, ...]], k: int):
        self.lists = lists
        self.k = k

    def __getitem__(self, j):
        return self.lists[j]

    def __len__(self) -> int:
        return len(self.lists)

    def __repr__(self) -> str:
        return f"ReportResult(k={self.k}, anchors={len(self.lists)})"


def batched_k_extreme(A: PointSet, B: PointSet, k: int, orientation: str = "NE") -> ReportResult:
    """For each ``b`` in ``B``, the ``k`` points of ``A`` in ``b``'s quadrant
    nearest ``b`` along the sweep axis.

    NE means ``[b_x, inf) x [b_y, inf)`` reporting the smallest x; the other
    orientations are the reflected problems (NW reports the largest x, and so
    on). Ties along the sweep axis are broken by id on the reflected points.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    ra, rb = reflect(A, orientation), reflect(B, orientation)
    if len(B) == 0:
        return ReportResult([], k)
    if len(A) == 0:
        return ReportResult([() for _ in range(len(B))], k)
    out, cnt = k_extreme_indices(ra.xs, ra.ys, rb.xs, rb.ys, k, a_tie=ra.ids)
    lists = [tuple(A[int(i)] for i in out[j, : cnt[j]]) for j in range(len(B))]
    return ReportResult(lists, k)
