"""Verification suites shared by the ``verify`` command and the acceptance tests.

Every check returns a :class:`CheckResult`; nothing here raises on a failed
check. Instance families are seeded, so a suite run is reproducible.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

import numpy as np

from . import oracle
from .anchored import phi
from .batched import batched_k_extreme
from .datasets import generate
from .exact import build_qsets, choose_split, exact_max_points, merge_value, min_area_rect, preprocess
from .geometry import PointSet, count_in
from .kappa import kappa
from .rangecount import CountStructure
from .sampling import approx_max_points, approx_max_points_os, sampling_rate, verify_sampling_events

SCALE_MAPS = ((2.0, 3.0), (-1.0, 5.0), (0.1, 10.0))
SCALE_OFFSETS = (7.0, -3.0)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    data: dict = field(default_factory=dict, repr=False)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _timed(name: str, fn: Callable[[], tuple[bool, str, dict]]) -> CheckResult:
    t0 = time.perf_counter()
    ok, detail, data = fn()
    return CheckResult(name, bool(ok), detail, time.perf_counter() - t0, data)


def instances(count: int, seed: int = 0, n_range=(5, 40)) -> Iterator[tuple[str, PointSet]]:
    """Alternating uniform / clusters instances with sizes drawn from ``n_range``."""
    rng = np.random.default_rng(seed)
    for i in range(count):
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        dist = "uniform" if i % 2 == 0 else "clusters"
        s = int(rng.integers(2**31))
        yield f"{dist}(n={n}, seed={s})", generate(n, dist, s)


# exact solver ------------------------------------------------------------

def check_oracle_equivalence(count: int = 200, seed: int = 0) -> CheckResult:
    """min_area_rect equals the enumeration oracle exactly, for every k."""

    def run():
        solves, bad = 0, []
        for label, ps in instances(count, seed):
            table = oracle.oracle_min_area_table(ps)
            for k in range(1, len(ps) + 1):
                got = min_area_rect(ps, k).area
                solves += 1
                if got != table[k]:
                    bad.append((label, k, got, float(table[k])))
        return not bad, f"{solves} solves on {count} instances, {len(bad)} mismatches", {"mismatches": bad}

    return _timed("exact solver vs oracle", run)


def check_merge_sandwich(count: int = 200, seed: int = 0) -> CheckResult:
    """At the root line: optarea <= V, with equality when the optimum crosses the line."""

    def run():
        bad, tight = [], 0
        for label, ps in instances(count, seed):
            n = len(ps)
            line = choose_split(ps)
            qsets = build_qsets(ps, line, n)
            table = oracle.oracle_min_area_table(ps)
            for k in range(1, n + 1):
                v = merge_value(ps, line, k, qsets).area
                opt = float(table[k])
                cross = oracle.oracle_min_area_crossing(ps, line, k).area
                if not opt <= v:
                    bad.append((label, k, "below optimum", v, opt))
                elif cross == opt:
                    tight += 1
                    if v != opt:
                        bad.append((label, k, "not tight", v, opt))
        return not bad, f"{tight} crossing cases tight, {len(bad)} violations", {"violations": bad}

    return _timed("merge value sandwich", run)


def check_qset_sizes(count: int = 200, seed: int = 0) -> CheckResult:
    """Every candidate set built anywhere in a tree has at most 4k points."""

    def run():
        worst, sets, bad = 0.0, 0, []
        for label, ps in instances(count, seed):
            n = len(ps)
            for k in sorted({1, 2, max(1, n // 4), n // 2 or 1, n}):
                for leaf in (1, 8):
                    tree = preprocess(ps, k, leaf_size=leaf)
                    for node in tree.nodes():
                        if node.is_leaf:
                            continue
                        sizes = tree.qsets(node).sizes()
                        sets += sizes.shape[0]
                        worst = max(worst, float(sizes.max()) / k)
                        if sizes.max() > 4 * k:
                            bad.append((label, k, leaf, int(sizes.max())))
        return not bad, f"{sets} sets, max |Q|/k = {worst:.2f}", {"violations": bad}

    return _timed("candidate set size", run)


def check_batched_report(count: int = 100, seed: int = 0) -> CheckResult:
    """Batched quadrant reporting equals the quadratic filter-sort-truncate."""

    def rand_set(rng, m, grid):
        if grid:
            cells = rng.choice(100, size=m, replace=False)
            pts = np.column_stack([cells % 10, cells // 10]).astype(float)
        else:
            pts = rng.random((m, 2))
        return PointSet(pts[:, 0], pts[:, 1], rng.permutation(m))

    def run():
        rng = np.random.default_rng(seed)
        bad, reports = [], 0
        for t in range(count):
            grid = t % 2 == 1
            A = rand_set(rng, int(rng.integers(1, 51)), grid)
            B = rand_set(rng, int(rng.integers(1, 51)), grid)
            k = int(rng.integers(1, len(A) + 2))
            for o in ("NE", "NW", "SE", "SW"):
                got = [list(r) for r in batched_k_extreme(A, B, k, o)]
                want = oracle.naive_k_extreme(A, B, k, o)
                reports += len(B)
                if got != want:
                    bad.append((t, o, k))
        return not bad, f"{count} triples x 4 orientations, {reports} anchors, {len(bad)} mismatches", {"bad": bad}

    return _timed("batched reporting vs naive", run)


def _alpha_grid(table: np.ndarray) -> np.ndarray:
    areas = np.unique(table[1:])
    pos = areas[areas > 0]
    mids = (areas[:-1] + areas[1:]) / 2
    extra = [pos.min() / 2] if pos.shape[0] else [1.0]
    grid = np.concatenate([pos, mids, extra, [areas.max() * 2 + 1]])
    return np.unique(grid[grid > 0])


def check_duality(count: int = 200, seed: int = 0) -> CheckResult:
    """optarea(k) <= alpha  iff  optpoints(alpha) >= k, on a grid holding every optimal area."""

    def run():
        bad, pairs = [], 0
        for label, ps in instances(count, seed):
            table = oracle.oracle_min_area_table(ps)
            for alpha in _alpha_grid(table):
                mp = oracle.oracle_max_points(ps, float(alpha))
                for k in range(1, len(ps) + 1):
                    pairs += 1
                    if (table[k] <= alpha) != (mp >= k):
                        bad.append((label, float(alpha), k))
        return not bad, f"{pairs} (alpha, k) pairs, {len(bad)} violations", {"violations": bad}

    return _timed("area/points duality", run)


# invariants --------------------------------------------------------------

def check_kappa_bounds(count: int = 200, seed: int = 0) -> CheckResult:
    """opt/4 <= kappa <= opt with alpha at oracle-area quantiles; witness checks."""

    def run():
        bad, cases = [], 0
        for label, ps in instances(count, seed):
            table = oracle.oracle_min_area_table(ps)
            cs = CountStructure(ps)
            for alpha in np.quantile(table[2:], [0.1, 0.5, 0.9]):
                alpha = float(alpha)
                if not alpha > 0:
                    continue
                opt = oracle.oracle_max_points(ps, alpha)
                kr = kappa(ps, alpha, cs)
                cases += 1
                if not (4 * kr.kappa >= opt and kr.kappa <= opt):
                    bad.append((label, alpha, opt, kr.kappa, "bounds"))
                if count_in(ps, kr.witness) != kr.kappa or not math.isclose(kr.witness.area, alpha, rel_tol=1e-12):
                    bad.append((label, alpha, opt, kr.kappa, "witness"))
        return not bad, f"{cases} (instance, alpha) cases, {len(bad)} violations", {"violations": bad}

    return _timed("kappa 4-approximation", run)


def check_scale_invariance(count: int = 50, seed: int = 1) -> CheckResult:
    """Area on an affinely scaled copy is |a1 a2| times the original, rel tol 1e-9."""

    def run():
        bad, solves = [], 0
        b1, b2 = SCALE_OFFSETS
        for label, ps in instances(count, seed):
            base = [min_area_rect(ps, k).area for k in range(1, len(ps) + 1)]
            for a1, a2 in SCALE_MAPS:
                mapped = ps.map(a1, b1, a2, b2)
                for k, area in enumerate(base, start=1):
                    got = min_area_rect(mapped, k).area
                    solves += 1
                    if not math.isclose(got, abs(a1 * a2) * area, rel_tol=1e-9, abs_tol=0.0):
                        bad.append((label, (a1, a2), k, got, area))
        return not bad, f"{solves} scaled solves, {len(bad)} violations", {"violations": bad}

    return _timed("scale invariance", run)


def check_phi_oracle(count: int = 100, seed: int = 2) -> CheckResult:
    """Anchored solver equals the anchored enumeration for every point and k."""

    def run():
        bad, cases = [], 0
        for label, ps in instances(count, seed, n_range=(2, 20)):
            for q in ps:
                for k in range(1, len(ps) + 1):
                    cases += 1
                    if phi(ps, q, k).area != oracle.oracle_phi(ps, q, k).area:
                        bad.append((label, q.id, k))
        return not bad, f"{cases} anchored cases, {len(bad)} mismatches", {"bad": bad}

    return _timed("anchored solver vs oracle", run)


def check_restriction(count: int = 100, seed: int = 3) -> CheckResult:
    """The line-crossing optimum never beats the unrestricted one."""

    def run():
        bad = []
        for label, ps in instances(count, seed):
            line = choose_split(ps)
            table = oracle.oracle_min_area_table(ps)
            for k in range(1, len(ps) + 1):
                if oracle.oracle_min_area_crossing(ps, line, k).area < table[k]:
                    bad.append((label, k))
        return not bad, f"{count} instances, {len(bad)} violations", {"bad": bad}

    return _timed("crossing restriction", run)


def check_os_solver(count: int = 100, seed: int = 4, eps: float = 0.25) -> CheckResult:
    """The output-sensitive solver covers at least (1 - eps) opt within area alpha."""

    def run():
        bad = []
        rng = np.random.default_rng(seed)
        for label, ps in instances(count, seed, n_range=(2, 30)):
            table = oracle.oracle_min_area_table(ps)
            alpha = float(np.quantile(table[2:], rng.random()))
            opt = oracle.oracle_max_points(ps, alpha)
            res = approx_max_points_os(ps, alpha, eps)
            if not (res.area <= alpha and res.count >= (1 - eps) * opt and count_in(ps, res.rect) == res.count):
                bad.append((label, alpha, opt, res.count))
        return not bad, f"{count} instances at eps={eps}, {len(bad)} violations", {"bad": bad}

    return _timed("output-sensitive solver guarantee", run)


# sampling ----------------------------------------------------------------

def _small_instance(n: int, seed: int):
    ps = generate(n, "clusters", seed)
    table = oracle.oracle_min_area_table(ps)
    alpha = float(table[n // 2])
    return ps, alpha, oracle.oracle_max_points(ps, alpha)


def check_sampling_events(trials: int = 200, seed: int = 0, n: int = 40, eps: float = 0.5) -> CheckResult:
    """Joint frequency of the two estimator events is at least 0.95."""

    def run():
        ps, alpha, opt = _small_instance(n, seed)
        rep = verify_sampling_events(ps, opt, eps, trials, seed, alpha=alpha)
        ok = rep.freq_joint >= 0.95
        detail = (
            f"n={n} kappa={opt} rho={rep.rho:.4g} trials={trials}: "
            f"estimate={rep.freq_estimate_ok:.3f} small={rep.freq_smallrect_ok:.3f} joint={rep.freq_joint:.3f}"
        )
        return ok, detail, {"report": rep}

    return _timed("sampling events", run)


def check_sample_size(trials: int = 200, seed: int = 0, n: int = 40, eps: float = 0.5) -> CheckResult:
    """In trials where both events hold, small-area battery counts stay below 144 ln n / eps^2."""

    def run():
        ps, alpha, opt = _small_instance(n, seed)
        rep = verify_sampling_events(ps, opt, eps, trials, seed, alpha=alpha)
        cap = 144 * math.log(n) / eps**2
        good = [c for c, j in zip(rep.max_small_area_sample_count, rep.joint_ok) if j]
        worst = max(good) if good else 0
        return worst <= cap, f"{len(good)} qualifying trials, max |R & S| = {worst} <= {cap:.1f}", {}

    return _timed("sample size bound", run)


def check_sampling_events_sparse(
    trials: int = 50, seed: int = 0, n: int = 5000, eps: float = 0.5, kappa_value: Optional[int] = None
) -> CheckResult:
    """Same events in a regime where the sampling rate is below 1 (random battery)."""

    def run():
        ps = generate(n, "uniform", seed)
        kv = kappa_value if kappa_value is not None else int(0.8 * n)
        rep = verify_sampling_events(ps, kv, eps, trials, seed)
        sizes = np.array(rep.sample_sizes)
        detail = (
            f"n={n} kappa={kv} rho={rep.rho:.3f} mean |S|={sizes.mean():.0f}: "
            f"joint={rep.freq_joint:.3f}"
        )
        return rep.rho < 1 and rep.freq_joint >= 0.95, detail, {"report": rep}

    return _timed("sampling events, rho < 1", run)


def check_determinism(seed: int = 0) -> CheckResult:
    """Same seed, same rectangle."""

    def run():
        ps, alpha, _ = _small_instance(40, seed)
        a = approx_max_points(ps, alpha, 0.25, seed)
        b = approx_max_points(ps, alpha, 0.25, seed)
        return a == b, f"rect {a.rect} count {a.count}", {}

    return _timed("seeded determinism", run)


def criterion8_instance(n: int = 5000, seed: int = 8, target: int = 65):
    """Cluster instance and an alpha strictly between optarea(target) and optarea(target + 1)."""
    ps = generate(n, "clusters", seed)
    lo = min_area_rect(ps, target).area
    hi = min_area_rect(ps, target + 1).area
    return ps, (lo + hi) / 2


def check_approx_quality(
    trials: int = 100, eps: float = 0.3, n: int = 5000, seed: int = 8, target: int = 65, need: int = 95
) -> CheckResult:
    """Re-counted coverage reaches ceil((1 - eps) opt) in at least ``need`` of ``trials`` seeds."""

    def run():
        ps, alpha = criterion8_instance(n, seed, target)
        opt = exact_max_points(ps, alpha).count
        cs = CountStructure(ps)
        threshold = math.ceil((1 - eps) * opt)
        hits, area_ok, counts = 0, True, []
        for s in range(trials):
            res = approx_max_points(ps, alpha, eps, s)
            c = cs.count(res.rect)
            counts.append(c)
            hits += c >= threshold
            area_ok &= res.area <= alpha and c == res.count
        kr = kappa(ps, alpha, cs)
        rho = sampling_rate(n, kr.kappa, eps / 3)
        ok = 50 <= opt <= 80 and hits >= need and area_ok
        detail = (
            f"opt={opt} threshold={threshold} rho={rho:.3g}: {hits}/{trials} hits, "
            f"counts in [{min(counts)}, {max(counts)}], areas <= alpha: {area_ok}"
        )
        return ok, detail, {"opt": opt, "counts": counts, "alpha": alpha}

    return _timed("randomized approximation quality", run)


# scaling -----------------------------------------------------------------

@dataclass
class BenchRow:
    n: int
    k: int
    seconds: float
    area: float


def fitted_exponent(ns, seconds) -> float:
    """Least-squares slope of log(time) against log(n)."""
    ns, seconds = np.asarray(ns, float), np.asarray(seconds, float)
    if ns.shape[0] < 2:
        raise ValueError("need >= 2 sizes")
    return float(np.polyfit(np.log(ns), np.log(seconds), 1)[0])


def bench(sizes, k: int = 10, seed: int = 0, distribution: str = "uniform", repeats: int = 1) -> list[BenchRow]:
    """Best-of-``repeats`` wall time of ``min_area_rect`` per size."""
    if len(sizes) < 2:
        raise ValueError("need >= 2 sizes")
    rows = []
    for n in sizes:
        ps = generate(int(n), distribution, seed)
        kk = min(k, len(ps))
        min_area_rect(generate(max(kk, 50), distribution, seed), kk)  # warm the kernels
        best, area = math.inf, math.nan
        for _ in range(repeats):
            t0 = time.perf_counter()
            area = min_area_rect(ps, kk).area
            best = min(best, time.perf_counter() - t0)
        rows.append(BenchRow(int(n), kk, best, area))
    return rows


def check_scaling(sizes=(10_000, 20_000, 40_000), k: int = 10, target: float = 1.35, limit: float = 1.6) -> CheckResult:
    """Fitted exponent of wall time vs n; the check fails only above ``limit``."""

    def run():
        rows = bench(sizes, k)
        e = fitted_exponent([r.n for r in rows], [r.seconds for r in rows])
        times = ", ".join(f"n={r.n}: {r.seconds:.2f}s" for r in rows)
        note = "within target" if e <= target else f"above target {target}"
        return e <= limit, f"exponent {e:.3f} ({note}); {times}", {"exponent": e, "rows": rows}

    return _timed("scaling exponent", run)


# suites ------------------------------------------------------------------

def suite_checks(suite: str, trials: Optional[int] = None, seed: int = 0) -> list[Callable[[], CheckResult]]:
    """Deferred checks of a named suite; ``trials`` overrides the instance/trial count."""

    def t(default):
        return trials if trials is not None else default

    if suite == "oracle":
        return [
            lambda: check_oracle_equivalence(t(200), seed),
            lambda: check_merge_sandwich(t(200), seed),
            lambda: check_qset_sizes(t(200), seed),
            lambda: check_batched_report(t(100), seed),
            lambda: check_duality(t(200), seed),
            lambda: check_phi_oracle(t(100), seed + 2),
        ]
    if suite == "invariants":
        return [
            lambda: check_kappa_bounds(t(200), seed),
            lambda: check_scale_invariance(t(50), seed + 1),
            lambda: check_restriction(t(100), seed + 3),
            lambda: check_os_solver(t(100), seed + 4),
            lambda: check_determinism(seed),
        ]
    if suite == "sampling":
        return [
            lambda: check_sampling_events(t(200), seed),
            lambda: check_sample_size(t(200), seed),
            lambda: check_sampling_events_sparse(min(t(50), 50), seed),
        ]
    raise KeyError(suite)


SUITES = ("oracle", "invariants", "sampling")

# acceptance criteria by number
ACCEPTANCE: dict[int, Callable[[], CheckResult]] = {
    1: check_oracle_equivalence,
    2: check_merge_sandwich,
    3: check_qset_sizes,
    4: check_kappa_bounds,
    5: check_batched_report,
    6: check_duality,
    7: check_scale_invariance,
    8: check_approx_quality,
    9: check_sampling_events,
    10: check_sample_size,
    11: check_scaling,
}
