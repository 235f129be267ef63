"""Random-sampling approximation for the maximum-coverage problem.

Pipeline: a deterministic 4-approximation ``kappa_a`` fixes a sampling rate,
an independent Bernoulli sample shrinks the optimum to ``O(log n / eps^2)``
points, and an output-sensitive search over the exact solver (binary search
on a geometric grid of ``k`` values) solves the sample. The returned
rectangle is always re-counted against the full input.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .exact import preprocess, query
from .geometry import AreaResult, PointSet, Rect, contains_mask
from .kappa import KappaResult, kappa as kappa_approx
from .rangecount import CountStructure

log = logging.getLogger(__name__)

CHERNOFF_CONST = 72.0


def sampling_rate(n: int, kappa: float, accuracy: float) -> float:
    """``min(1, 72 ln(n) / (kappa * accuracy^2))``; 1 for ``n <= 1``."""
    if kappa <= 0 or accuracy <= 0:
        raise ValueError("kappa and accuracy must be positive")
    if n <= 1:
        return 1.0
    return min(1.0, CHERNOFF_CONST / (kappa * accuracy * accuracy) * math.log(n))


@dataclass(frozen=True)
class SamplingPlan:
    n: int
    kappa_a: int
    eps: float
    delta: float
    rho: float
    seed: int

    @classmethod
    def create(cls, n: int, kappa_a: int, eps: float, seed: int = 0, delta: Optional[float] = None) -> "SamplingPlan":
        """Plan for target accuracy ``eps``; the sample is tuned for ``delta``
        (default ``eps / 3``)."""
        if delta is None:
            delta = eps / 3
        return cls(int(n), int(kappa_a), float(eps), float(delta), sampling_rate(n, kappa_a, delta), int(seed))


def _bernoulli_mask(n: int, rho: float, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.random(n) < rho


def rho_sample(ps: PointSet, plan: SamplingPlan) -> PointSet:
    """Keep each point independently with probability ``plan.rho``."""
    if plan.rho >= 1.0:
        return ps
    mask = _bernoulli_mask(len(ps), plan.rho, plan.seed)
    return ps.subset(np.flatnonzero(mask))


def _k_grid(ka: int, eps: float) -> list[int]:
    vals, i = [], 0
    while True:
        v = ka + i * eps * ka
        if v > 4 * ka * (1 + 1e-12):
            break
        vals.append(math.ceil(v - 1e-9 * v))
        i += 1
    return sorted(set(vals))


def _shrink(ps: PointSet, rect: Rect) -> AreaResult:
    inside = contains_mask(rect, ps.xs, ps.ys)
    xs, ys = ps.xs[inside], ps.ys[inside]
    tight = Rect(float(xs.min()), float(xs.max()), float(ys.min()), float(ys.max()))
    return AreaResult(tight.area, tight, int(inside.sum()))


def _check_alpha(alpha: float) -> None:
    if not (alpha > 0 and math.isfinite(alpha)):
        raise ValueError("alpha must be a positive finite number")


def approx_max_points_os(ps: PointSet, alpha: float, eps: float, kr: Optional[KappaResult] = None) -> AreaResult:
    """Rectangle of area at most ``alpha`` covering at least ``(1 - eps)``
    times the optimum; running time grows with the optimum itself.

    ``kr`` may carry a precomputed ``kappa(ps, alpha)``.
    """
    _check_alpha(alpha)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    n = len(ps)
    if n == 0:
        raise ValueError("empty input")
    if kr is None:
        kr = kappa_approx(ps, alpha)
    ka = kr.kappa
    budget = min(4 * ka, n)
    grid = [v for v in _k_grid(ka, eps) if v <= budget]
    tree = preprocess(ps, budget)

    def attempt(kv):
        res = query(tree, kv, bound=alpha, first_fit=True)
        return res if res.area <= alpha else None

    best = attempt(grid[0])
    if best is None:
        # only reachable through rounding at the area boundary
        return _shrink(ps, kr.witness)
    lo, hi = 0, len(grid)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        res = attempt(grid[mid])
        if res is None:
            hi = mid
        else:
            lo, best = mid, res
    log.debug("os search: kappa_a=%d grid=%s chosen k=%d", ka, grid, grid[lo])
    return best


def approx_max_points(ps: PointSet, alpha: float, eps: float = 0.25, seed: int = 0) -> AreaResult:
    """Randomized ``(1 - eps)``-approximation of the maximum coverage by an
    area-``alpha`` rectangle (succeeds with probability at least ``1 - 2/n^2``).

    The reported count is exact for the full input.
    """
    _check_alpha(alpha)
    if not 0 < eps <= 0.5:
        raise ValueError("eps must lie in (0, 1/2]")
    n = len(ps)
    if n == 0:
        raise ValueError("empty input")
    if n == 1:
        p = ps[0]
        r = Rect(p.x, p.x, p.y, p.y)
        return AreaResult(0.0, r, 1)
    cs = CountStructure(ps)
    kr = kappa_approx(ps, alpha, cs)
    plan = SamplingPlan.create(n, kr.kappa, eps, seed)
    sample = rho_sample(ps, plan)
    log.debug("kappa_a=%d rho=%.6g |S|=%d", kr.kappa, plan.rho, len(sample))
    if len(sample):
        res = approx_max_points_os(sample, alpha, plan.delta, kr if sample is ps else None)
        covered = cs.count(res.rect)
        if covered >= kr.kappa:
            return AreaResult(res.area, res.rect, covered)
    return _shrink(ps, kr.witness)


@dataclass
class MonteCarloReport:
    trials: int
    rho: float
    freq_estimate_ok: float
    freq_smallrect_ok: float
    freq_joint: float
    sample_sizes: list[int] = field(repr=False)
    joint_ok: list[bool] = field(repr=False)
    # per trial: largest sample count over battery rectangles of area <= alpha
    max_small_area_sample_count: Optional[list[int]] = field(default=None, repr=False)


def _coordinate_battery(ps: PointSet):
    """All rectangles spanned by coordinate pairs (every distinct subset ``R & P``)."""
    ux, uy = np.unique(ps.xs), np.unique(ps.ys)
    xi, xj = np.triu_indices(ux.shape[0])
    ya, yb = np.triu_indices(uy.shape[0])
    rects = np.empty((xi.shape[0], ya.shape[0], 4))
    rects[..., 0] = ux[xi][:, None]
    rects[..., 1] = ux[xj][:, None]
    rects[..., 2] = uy[ya][None, :]
    rects[..., 3] = uy[yb][None, :]
    return rects.reshape(-1, 4)


def _random_battery(ps: PointSet, size: int, rng) -> np.ndarray:
    n = len(ps)
    a, b = rng.integers(0, n, size), rng.integers(0, n, size)
    c, d = rng.integers(0, n, size), rng.integers(0, n, size)
    xs, ys = ps.xs, ps.ys
    return np.column_stack([
        np.minimum(xs[a], xs[b]), np.maximum(xs[a], xs[b]),
        np.minimum(ys[c], ys[d]), np.maximum(ys[c], ys[d]),
    ])


def verify_sampling_events(
    ps: PointSet,
    kappa: float,
    eps: float,
    trials: int,
    seed: int = 0,
    alpha: Optional[float] = None,
    battery_size: int = 2000,
) -> MonteCarloReport:
    """Monte-Carlo frequencies of the two sampling events over a rectangle battery.

    Large rectangles (at least ``kappa / 4`` points) must be estimated within
    ``(1 +- eps)``; small ones must be estimated below ``kappa / 2``. The
    sample rate is ``sampling_rate(n, kappa, eps)``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    n = len(ps)
    rho = sampling_rate(n, kappa, eps)
    seeds = np.random.SeedSequence(seed).generate_state(trials, dtype=np.uint64)
    if n <= 40:
        battery = _coordinate_battery(ps)
    else:
        battery = _random_battery(ps, battery_size, np.random.default_rng(seed))
    full = CountStructure(ps).count_many(battery)
    large = full >= kappa / 4
    small_area = None
    if alpha is not None:
        small_area = (battery[:, 1] - battery[:, 0]) * (battery[:, 3] - battery[:, 2]) <= alpha
    est_ok, small_ok, sizes, max_small = [], [], [], []
    for s in seeds:
        mask = _bernoulli_mask(n, rho, int(s)) if rho < 1 else np.ones(n, bool)
        sample = ps.subset(np.flatnonzero(mask))
        sc = CountStructure(sample).count_many(battery)
        x = sc / rho
        c = full[large]
        est_ok.append(bool(np.all((x[large] >= (1 - eps) * c) & (x[large] <= (1 + eps) * c))))
        small_ok.append(bool(np.all(x[~large] < kappa / 2)))
        sizes.append(len(sample))
        if small_area is not None:
            max_small.append(int(sc[small_area].max()) if small_area.any() else 0)
    est = np.array(est_ok)
    sm = np.array(small_ok)
    joint = est & sm
    return MonteCarloReport(
        trials=trials,
        rho=rho,
        freq_estimate_ok=float(est.mean()),
        freq_smallrect_ok=float(sm.mean()),
        freq_joint=float(joint.mean()),
        sample_sizes=sizes,
        joint_ok=joint.tolist(),
        max_small_area_sample_count=max_small if small_area is not None else None,
    )
