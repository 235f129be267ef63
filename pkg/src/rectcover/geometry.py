"""Planar primitives: points, point sets with tie-broken orders, closed rectangles."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np


class Point(NamedTuple):
    x: float
    y: float
    id: int


@dataclass(frozen=True)
class Rect:
    """Closed axis-parallel rectangle ``[xmin, xmax] x [ymin, ymax]``."""

    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def __post_init__(self):
        if not (self.xmin <= self.xmax and self.ymin <= self.ymax):
            raise ValueError(f"malformed rectangle {self!r}")

    @property
    def area(self) -> float:
        return (self.xmax - self.xmin) * (self.ymax - self.ymin)

    @property
    def top(self) -> tuple[tuple[float, float], tuple[float, float]]:
        return (self.xmin, self.ymax), (self.xmax, self.ymax)

    @property
    def bottom(self) -> tuple[tuple[float, float], tuple[float, float]]:
        return (self.xmin, self.ymin), (self.xmax, self.ymin)

    def contains(self, p) -> bool:
        return contains(self, p)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.xmin, self.xmax, self.ymin, self.ymax)

    def sort_key(self) -> tuple[float, float, float, float, float]:
        # deterministic tie rule for equal areas
        return (self.area, self.xmin, self.ymin, self.xmax, self.ymax)


@dataclass(frozen=True)
class AreaResult:
    """An optimal or candidate value together with its witness.

    ``area`` is ``inf`` exactly when there is no witness (infeasible).
    """

    area: float
    rect: Optional[Rect] = None
    count: int = 0

    def __post_init__(self):
        if (self.rect is None) != math.isinf(self.area):
            raise ValueError("area must be +inf iff rect is absent")

    @classmethod
    def infeasible(cls) -> "AreaResult":
        return cls(math.inf, None, 0)

    @property
    def feasible(self) -> bool:
        return self.rect is not None

    def sort_key(self):
        if self.rect is None:
            return (math.inf,)
        return self.rect.sort_key()

    def better(self, other: "AreaResult") -> "AreaResult":
        return other if other.sort_key() < self.sort_key() else self


class PointSet:
    """Immutable planar point set.

    ``rank_x``/``rank_y`` are the permutations sorting the points by
    ``(x, id)`` and ``(y, id)``; ``pos_x``/``pos_y`` are their inverses.
    Duplicate ``(x, y)`` pairs and duplicate ids are rejected.
    """

    __slots__ = ("xs", "ys", "ids", "rank_x", "rank_y", "pos_x", "pos_y")

    def __init__(self, xs, ys, ids=None):
        xs = np.array(xs, dtype=np.float64).reshape(-1)
        ys = np.array(ys, dtype=np.float64).reshape(-1)
        if xs.shape != ys.shape:
            raise ValueError("x and y arrays differ in length")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise ValueError("coordinates must be finite")
        n = xs.shape[0]
        if ids is None:
            ids = np.arange(n, dtype=np.int64)
        else:
            ids = np.array(ids, dtype=np.int64).reshape(-1)
            if ids.shape != xs.shape:
                raise ValueError("ids array differs in length")
            if n and ids.min() < 0:
                raise ValueError("ids must be non-negative")
            if np.unique(ids).shape[0] != n:
                raise ValueError("ids must be unique")
        _check_distinct(xs, ys, ids)
        self.xs, self.ys, self.ids = xs, ys, ids
        self.rank_x = np.lexsort((ids, xs))
        self.rank_y = np.lexsort((ids, ys))
        self.pos_x = np.empty(n, dtype=np.int64)
        self.pos_x[self.rank_x] = np.arange(n)
        self.pos_y = np.empty(n, dtype=np.int64)
        self.pos_y[self.rank_y] = np.arange(n)
        for a in (xs, ys, ids, self.rank_x, self.rank_y, self.pos_x, self.pos_y):
            a.flags.writeable = False

    @classmethod
    def from_points(cls, points: Iterable) -> "PointSet":
        """Build from ``Point`` objects or plain ``(x, y)`` pairs."""
        pts = list(points)
        if pts and all(isinstance(p, Point) for p in pts):
            return cls([p.x for p in pts], [p.y for p in pts], [p.id for p in pts])
        arr = np.asarray(pts, dtype=np.float64).reshape(-1, 2)
        return cls(arr[:, 0], arr[:, 1])

    @classmethod
    def from_array(cls, arr) -> "PointSet":
        arr = np.asarray(arr, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("expected an (n, 2) array")
        return cls(arr[:, 0], arr[:, 1])

    def __len__(self) -> int:
        return self.xs.shape[0]

    def __getitem__(self, i: int) -> Point:
        return Point(float(self.xs[i]), float(self.ys[i]), int(self.ids[i]))

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def __repr__(self) -> str:
        return f"PointSet(n={len(self)})"

    @property
    def points(self) -> list[Point]:
        return list(self)

    def as_array(self) -> np.ndarray:
        return np.column_stack([self.xs, self.ys])

    def subset(self, indices: Sequence[int]) -> "PointSet":
        idx = np.asarray(indices, dtype=np.int64)
        return PointSet(self.xs[idx], self.ys[idx], self.ids[idx])

    def index_of(self, p: Point) -> int:
        """Position of ``p`` (matched by id and coordinates); ``KeyError`` if absent."""
        hits = np.flatnonzero(self.ids == p.id)
        if hits.size == 1:
            i = int(hits[0])
            if self.xs[i] == p.x and self.ys[i] == p.y:
                return i
        raise KeyError(f"{p!r} is not in the point set")

    def map(self, a1: float, b1: float, a2: float, b2: float) -> "PointSet":
        """Image under ``(x, y) -> (a1*x + b1, a2*y + b2)``, ids preserved."""
        return PointSet(a1 * self.xs + b1, a2 * self.ys + b2, self.ids)


def _check_distinct(xs: np.ndarray, ys: np.ndarray, ids: np.ndarray) -> None:
    if xs.shape[0] < 2:
        return
    order = np.lexsort((ys, xs))
    same = (np.diff(xs[order]) == 0) & (np.diff(ys[order]) == 0)
    if same.any():
        j = int(np.flatnonzero(same)[0])
        a, b = order[j], order[j + 1]
        raise ValueError(
            f"duplicate point ({xs[a]!r}, {ys[a]!r}) with ids {ids[a]} and {ids[b]}"
        )


def bbox(ps: PointSet) -> Rect:
    if len(ps) == 0:
        raise ValueError("empty input")
    return Rect(float(ps.xs.min()), float(ps.xs.max()), float(ps.ys.min()), float(ps.ys.max()))


def contains(r: Rect, p) -> bool:
    x, y = p[0], p[1]
    return r.xmin <= x <= r.xmax and r.ymin <= y <= r.ymax


def contains_mask(r: Rect, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    return (xs >= r.xmin) & (xs <= r.xmax) & (ys >= r.ymin) & (ys <= r.ymax)


def count_in(ps: PointSet, r: Rect) -> int:
    """Linear-scan closed-containment count."""
    return int(np.count_nonzero(contains_mask(r, ps.xs, ps.ys)))


def result_from_rect(ps: PointSet, rect: Optional[Rect]) -> AreaResult:
    if rect is None:
        return AreaResult.infeasible()
    return AreaResult(rect.area, rect, count_in(ps, rect))
