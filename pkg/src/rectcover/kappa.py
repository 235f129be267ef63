"""Recursive 4-approximation of the maximum number of points an area-alpha
rectangle can cover.

At each split line every point ``p`` spawns two area-``alpha`` rectangles with
a corner at ``p`` and an edge on the line (one extending right, one left);
the best count among them, over all recursion levels, is the estimate. Counts
are always taken against the full input through one shared index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exact import SplitLine, _sides, _split_node
from .geometry import PointSet, Rect
from .rangecount import CountStructure


@dataclass(frozen=True)
class KappaResult:
    kappa: int
    witness: Rect


@dataclass(frozen=True)
class CandidateRects:
    """Rows ``(xmin, xmax, ymin, ymax)``: ``rects[2i]`` extends right of
    point ``i``, ``rects[2i + 1]`` extends left."""

    line: SplitLine
    alpha: float
    rects: np.ndarray

    def __len__(self) -> int:
        return self.rects.shape[0]

    def __getitem__(self, i: int) -> Rect:
        return Rect(*(float(v) for v in self.rects[i]))


def _check_alpha(alpha: float) -> None:
    if not (alpha > 0 and math.isfinite(alpha)):
        raise ValueError("alpha must be a positive finite number")


def _candidates(xs, ys, ly, alpha, extent):
    """Candidate rectangles for points at ``xs, ys`` and a line at ``ly``.

    A point with zero height above the line (possible only with tied
    y-coordinates) gets a thin area-``alpha`` box centred on the line instead.
    """
    h = np.abs(ys - ly)
    with np.errstate(divide="ignore", over="ignore"):
        w = alpha / h
    y0 = np.minimum(ys, ly)
    y1 = np.maximum(ys, ly)
    bad = ~np.isfinite(w)
    if bad.any():
        w[bad] = np.where(extent > 0, extent, math.sqrt(alpha))
        hh = alpha / w[bad]
        y0[bad] = ly - hh / 2
        y1[bad] = ly + hh / 2
    out = np.empty((2 * xs.shape[0], 4))
    out[0::2] = np.column_stack([xs, xs + w, y0, y1])
    out[1::2] = np.column_stack([xs - w, xs, y0, y1])
    return out


def candidate_rects(ps: PointSet, line: SplitLine, alpha: float) -> CandidateRects:
    _check_alpha(alpha)
    if line.below is None:
        _sides(ps, line)  # rejects points on the line
    extent = float(np.ptp(ps.xs)) if len(ps) else 0.0
    rects = _candidates(ps.xs, ps.ys, float(line.y), float(alpha), extent)
    return CandidateRects(line, float(alpha), rects)


def _corner_square(x, y, alpha):
    s = math.sqrt(alpha)
    return np.array([[x, x + s, y, y + s]])


def kappa(ps: PointSet, alpha: float, cs: CountStructure | None = None) -> KappaResult:
    """Value between a quarter of the optimum and the optimum, with a witness."""
    _check_alpha(alpha)
    if len(ps) == 0:
        raise ValueError("empty input")
    if cs is None:
        cs = CountStructure(ps)
    extent = float(np.ptp(ps.xs))
    best_count, best_rect = -1, None
    level = [ps.rank_y.astype(np.int64)]
    while level:
        batch, nxt = [], []
        for idx in level:
            if idx.shape[0] == 1:
                batch.append(_corner_square(ps.xs[idx[0]], ps.ys[idx[0]], alpha))
                continue
            r, line = _split_node(ps, idx)
            batch.append(_candidates(ps.xs[idx], ps.ys[idx], line.y, alpha, extent))
            nxt.extend((idx[:r], idx[r:]))
        rects = np.concatenate(batch)
        counts = cs.count_many(rects)
        j = int(np.argmax(counts))
        if counts[j] > best_count:
            best_count, best_rect = int(counts[j]), rects[j]
        level = nxt
    return KappaResult(best_count, Rect(*(float(v) for v in best_rect)))
