"""Exact minimum-area k-enclosing rectangle by divide and conquer.

Each node splits its points by a horizontal line between the median y-ranks.
An optimal rectangle either lies on one side (handled by recursion) or
crosses the line; for the crossing case every point ``p`` gets a small
candidate set ``Q_p`` (the ``k`` x-nearest points on either side of ``p``
inside the slab between the line and ``p``, and inside the mirrored slab),
and the anchored solver on ``(Q_p, p)`` recovers the crossing optimum.

Combinatorial decisions (sweep orders, slab membership, distance to the line)
use ``(coordinate, id)`` ranks, which behaves like an infinitesimal
perturbation of the input; areas are always evaluated on raw coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np
from numba import njit

from .anchored import _lex_less, _phi_both
from .batched import k_extreme_indices
from .geometry import AreaResult, PointSet, Rect, count_in
from .oracle import min_area_arrays

INF = math.inf
DEFAULT_LEAF_SIZE = 8


@dataclass(frozen=True)
class SplitLine:
    """Horizontal line ``y``; ``below`` is the number of points (in
    ``(y, id)`` order) assigned below it, when the line came from a split."""

    y: float
    below: Optional[int] = None


def _split_rank(m: int) -> int:
    return m // 2


def choose_split(ps: PointSet) -> SplitLine:
    """Line between the two middle y-ranks; halves have at most ``ceil(n/2)`` points."""
    m = len(ps)
    if m < 2:
        raise ValueError("need at least 2 points to split")
    r = _split_rank(m)
    lo, hi = ps.ys[ps.rank_y[r - 1]], ps.ys[ps.rank_y[r]]
    return SplitLine(float((lo + hi) / 2), r)


def _sides(ps: PointSet, line: SplitLine) -> int:
    """Number of points below ``line`` (they come first in ``rank_y``)."""
    if line.below is not None:
        if not 0 <= line.below <= len(ps):
            raise ValueError("split rank out of range")
        return int(line.below)
    if np.any(ps.ys == line.y):
        raise ValueError("a point lies on the split line")
    return int(np.count_nonzero(ps.ys < line.y))


def _distance_ranks(Y, idx, r, ly):
    """Rank of each node point by distance to the line; ties are resolved
    monotonically in y on each side."""
    m = idx.shape[0]
    pos = np.arange(m)
    above = pos >= r
    y = Y[idx]
    d = np.where(above, y - ly, ly - y)
    t = np.where(above, pos, r - 1 - pos)
    rd = np.empty(m, np.int64)
    rd[np.lexsort((t, d))] = np.arange(m)
    return rd


def _node_lists(X, RX, Y, idx, r, ly, k):
    """The four directional k-lists for every node point.

    Slot 0/1: points above the line, right/left of ``p``, inside the slab of
    ``p`` (or of its mirror image when ``p`` is below). Slots 2/3: the same
    for points below the line. Entries are global indices, ``-1`` padded.
    """
    m = idx.shape[0]
    rd = _distance_ranks(Y, idx, r, ly)
    rx = RX[idx].astype(np.int64)
    lists = np.full((m, 4, k), -1, np.int32)
    counts = np.zeros((m, 4), np.int64)
    up = np.arange(r, m)
    dn = np.arange(0, r)
    for slot, (A, sx) in enumerate(((up, 1), (up, -1), (dn, 1), (dn, -1))):
        if A.shape[0] == 0:
            continue
        out, cnt = k_extreme_indices(sx * rx[A], -rd[A], sx * rx, -rd, k)
        lists[:, slot, :] = np.where(out >= 0, idx[A][np.maximum(out, 0)], -1)
        counts[:, slot] = cnt
    return lists, counts


class QSets:
    """Candidate sets ``Q_p`` for one split line.

    ``Q_p`` is the union of ``p`` with its four directional lists; for a
    budget ``k' <= k`` only the first ``k'`` entries of each list are used,
    which is exactly the family built with budget ``k'``.
    """

    def __init__(self, ps: PointSet, idx, lists, counts, k: int):
        self.ps = ps
        self.idx = idx
        self.lists = lists
        self.counts = counts
        self.k = k
        self._where = {int(g): j for j, g in enumerate(idx)}

    def __len__(self) -> int:
        return self.idx.shape[0]

    def members(self, j: int, k: Optional[int] = None) -> np.ndarray:
        """Global indices of ``Q_p`` for the node's ``j``-th point."""
        k = self.k if k is None else k
        p = int(self.idx[j])
        parts = [np.array([p])]
        for s in range(4):
            parts.append(self.lists[j, s, : min(int(self.counts[j, s]), k)])
        allm = np.concatenate(parts).astype(np.int64)
        _, first = np.unique(allm, return_index=True)
        return allm[np.sort(first)]

    def __getitem__(self, p) -> PointSet:
        """``Q_p`` as a point set; ``p`` is a Point of the parent set."""
        g = self.ps.index_of(p)
        return self.ps.subset(self.members(self._where[g]))

    def sizes(self) -> np.ndarray:
        return np.array([self.members(j).shape[0] for j in range(len(self))])


def build_qsets(ps: PointSet, line: SplitLine, k: int) -> QSets:
    if k < 1:
        raise ValueError("k must be >= 1")
    r = _sides(ps, line)
    idx = ps.rank_y.astype(np.int64)
    lists, counts = _node_lists(ps.xs, ps.pos_x, ps.ys, idx, r, float(line.y), int(k))
    return QSets(ps, idx, lists, counts, int(k))


@njit(cache=True)
def _merge_kernel(X, Y, XK, YK, node_idx, lists, counts, kq, bound, stop):
    """Best ``phi`` over the node's candidate sets.

    Each ``Q_p`` is assembled in x-order by merging the directional lists,
    which the sweep reports sorted by x. With ``stop`` the scan ends at the
    first rectangle of area at most ``bound``.
    """
    m = node_idx.shape[0]
    L = lists.shape[2]
    best = np.inf
    bx0 = np.nan
    bx1 = np.nan
    by0 = np.nan
    by1 = np.nan
    left = np.empty(2 * L, np.int64)
    buf = np.empty(4 * L + 1, np.int64)
    for j in range(m):
        p = node_idx[j]
        c = np.empty(4, np.int64)
        for s in range(4):
            c[s] = min(counts[j, s], kq)
        if c[0] + c[1] + c[2] + c[3] + 1 < kq:
            continue
        # left side: slots 1 and 3, each in decreasing x
        nl = 0
        a = 0
        b = 0
        while a < c[1] or b < c[3]:
            if b >= c[3] or (a < c[1] and XK[lists[j, 1, a]] > XK[lists[j, 3, b]]):
                g = lists[j, 1, a]
                a += 1
            else:
                g = lists[j, 3, b]
                b += 1
            if g != p:
                left[nl] = g
                nl += 1
        nq = 0
        for t in range(nl - 1, -1, -1):
            buf[nq] = left[t]
            nq += 1
        qi = nq
        buf[nq] = p
        nq += 1
        a = 0
        b = 0
        while a < c[0] or b < c[2]:
            if b >= c[2] or (a < c[0] and XK[lists[j, 0, a]] < XK[lists[j, 2, b]]):
                g = lists[j, 0, a]
                a += 1
            else:
                g = lists[j, 2, b]
                b += 1
            if g != p:
                buf[nq] = g
                nq += 1
        if nq < kq:
            continue
        sel = buf[:nq]
        lim = best if best < bound else bound
        a0, x0, x1, y0, y1 = _phi_both(X[sel], Y[sel], XK[sel], YK[sel], qi, kq, lim)
        if a0 < best or (a0 == best and _lex_less(a0, x0, y0, x1, y1, best, bx0, by0, bx1, by1)):
            best = a0
            bx0 = x0
            bx1 = x1
            by0 = y0
            by1 = y1
            if stop and best <= bound:
                break
    return best, bx0, bx1, by0, by1


def _result(ps: PointSet, out) -> AreaResult:
    area, x0, x1, y0, y1 = out
    if math.isinf(area):
        return AreaResult.infeasible()
    rect = Rect(float(x0), float(x1), float(y0), float(y1))
    return AreaResult(rect.area, rect, count_in(ps, rect))


def _check_budget(k: int, limit: int, what: str = "k") -> None:
    if not 1 <= k <= limit:
        raise ValueError(f"{what}={k} out of range [1, {limit}]")


def merge_value(ps: PointSet, line: SplitLine, k: int, qsets: QSets) -> AreaResult:
    """Best anchored rectangle over all ``(Q_p, p)``: never below the optimum,
    and equal to it when some optimal rectangle crosses ``line``."""
    _check_budget(k, qsets.k, "k'")
    out = _merge_kernel(ps.xs, ps.ys, ps.pos_x, ps.pos_y, qsets.idx, qsets.lists, qsets.counts, int(k), INF, False)
    return _result(ps, out)


@dataclass
class DCNode:
    idx: np.ndarray  # global indices, sorted by (y, id)
    depth: int
    line: Optional[SplitLine] = None
    lists: Optional[np.ndarray] = field(default=None, repr=False)
    counts: Optional[np.ndarray] = field(default=None, repr=False)
    below: Optional["DCNode"] = None
    above: Optional["DCNode"] = None

    @property
    def size(self) -> int:
        return self.idx.shape[0]

    @property
    def is_leaf(self) -> bool:
        return self.line is None


@dataclass
class DCTree:
    ps: PointSet
    k: int
    leaf_size: int
    root: DCNode

    def nodes(self) -> Iterator[DCNode]:
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            if not node.is_leaf:
                stack.append(node.above)
                stack.append(node.below)

    def depth(self) -> int:
        return max(node.depth for node in self.nodes())

    def qsets(self, node: DCNode) -> QSets:
        return QSets(self.ps, node.idx, node.lists, node.counts, self.k)


def _split_node(ps: PointSet, idx: np.ndarray):
    m = idx.shape[0]
    r = _split_rank(m)
    ly = float((ps.ys[idx[r - 1]] + ps.ys[idx[r]]) / 2)
    return r, SplitLine(ly, r)


def preprocess(ps: PointSet, k: int, leaf_size: int = DEFAULT_LEAF_SIZE) -> DCTree:
    """Build the recursion tree, storing the candidate lists of every node."""
    _check_budget(k, len(ps))
    if leaf_size < 1:
        raise ValueError("leaf_size must be >= 1")
    root = DCNode(ps.rank_y.astype(np.int64), 0)
    stack = [root]
    while stack:
        node = stack.pop()
        if node.size <= leaf_size:
            continue
        r, line = _split_node(ps, node.idx)
        node.line = line
        node.lists, node.counts = _node_lists(ps.xs, ps.pos_x, ps.ys, node.idx, r, line.y, k)
        node.below = DCNode(node.idx[:r], node.depth + 1)
        node.above = DCNode(node.idx[r:], node.depth + 1)
        stack.extend((node.above, node.below))
    return DCTree(ps, int(k), int(leaf_size), root)


def _leaf(ps: PointSet, idx: np.ndarray, k: int):
    return min_area_arrays(ps.xs[idx], ps.ys[idx], k)


def _better(a, b):
    if b[0] < a[0]:
        return b
    if b[0] == a[0] and not math.isinf(a[0]) and (b[1], b[3], b[2], b[4]) < (a[1], a[3], a[2], a[4]):
        return b
    return a


_NONE = (INF, math.nan, math.nan, math.nan, math.nan)


def _single(ps: PointSet) -> AreaResult:
    # the tie rule picks the degenerate box at the lexicographically first point
    i = int(np.lexsort((ps.ys, ps.xs))[0])
    x, y = float(ps.xs[i]), float(ps.ys[i])
    return AreaResult(0.0, Rect(x, x, y, y), 1)


def query(tree: DCTree, k: int, bound: float = INF, first_fit: bool = False) -> AreaResult:
    """Exact optimum for ``k <= tree.k``.

    With a finite ``bound`` the search is cut short wherever it can prove an
    area above ``bound``: the answer is exact whenever the optimum is at most
    ``bound`` and is otherwise only guaranteed to exceed it. With
    ``first_fit`` the search returns the first rectangle found with area at
    most ``bound`` (a decision query with a witness, not the optimum).
    """
    _check_budget(k, tree.k, "k'")
    ps = tree.ps
    best = _NONE
    stack = [tree.root]
    while stack:
        if first_fit and best[0] <= bound:
            break
        node = stack.pop()
        if node.size < k:
            continue
        lim = min(best[0], bound)
        if node.is_leaf:
            best = _better(best, _leaf(ps, node.idx, k))
            continue
        out = _merge_kernel(ps.xs, ps.ys, ps.pos_x, ps.pos_y, node.idx, node.lists, node.counts, int(k), lim, first_fit)
        best = _better(best, out)
        stack.extend((node.above, node.below))
    return _result(ps, best)


def min_area_rect(
    ps: PointSet, k: int, leaf_size: int = DEFAULT_LEAF_SIZE, bound: float = INF, first_fit: bool = False
) -> AreaResult:
    """One-shot solve: candidate lists are consumed as soon as they are built.

    ``bound`` and ``first_fit`` have the same meaning as in :func:`query`.
    """
    _check_budget(k, len(ps))
    if leaf_size < 1:
        raise ValueError("leaf_size must be >= 1")
    if k == 1:
        return _single(ps)
    best = _NONE
    stack = [ps.rank_y.astype(np.int64)]
    while stack:
        if first_fit and best[0] <= bound:
            break
        idx = stack.pop()
        m = idx.shape[0]
        if m < k:
            continue
        if m <= leaf_size:
            best = _better(best, _leaf(ps, idx, k))
            continue
        r, line = _split_node(ps, idx)
        lists, counts = _node_lists(ps.xs, ps.pos_x, ps.ys, idx, r, line.y, k)
        out = _merge_kernel(ps.xs, ps.ys, ps.pos_x, ps.pos_y, idx, lists, counts, int(k), min(best[0], bound), first_fit)
        best = _better(best, out)
        stack.extend((idx[r:], idx[:r]))
    return _result(ps, best)


def exact_max_points(ps: PointSet, alpha: float, leaf_size: int = DEFAULT_LEAF_SIZE) -> AreaResult:
    """Largest coverage by an area-``alpha`` rectangle, via the duality
    ``optarea(P, k) <= alpha  iff  optpoints(P, alpha) >= k``: doubling then
    binary search on ``k`` over exact solves."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    n = len(ps)

    def fits(k):
        res = min_area_rect(ps, k, leaf_size, bound=alpha, first_fit=True)
        return res if res.area <= alpha else None

    lo, best = 1, fits(1)
    hi = n + 1
    step = 1
    while lo + step < hi:
        res = fits(lo + step)
        if res is None:
            hi = lo + step
            break
        lo, best = lo + step, res
        step *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        res = fits(mid)
        if res is None:
            hi = mid
        else:
            lo, best = mid, res
    # canonical witness: the minimum-area rectangle at the optimum
    return min_area_rect(ps, lo, leaf_size, bound=alpha)
