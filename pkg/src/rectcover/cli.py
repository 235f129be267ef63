"""Command-line entry point.

Solver commands print one JSON record (a run report) on stdout and a short
human-readable summary on stderr. Exit codes: 0 success, 1 check failure,
2 usage or validation error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import oracle
from .datasets import DISTRIBUTIONS, DatasetError, format_points, generate, read_points
from .exact import DEFAULT_LEAF_SIZE, exact_max_points, min_area_rect
from .geometry import AreaResult, Rect
from .kappa import kappa
from .sampling import approx_max_points
from .verify import SUITES, bench, fitted_exponent, suite_checks

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    algorithm: str
    params: dict
    seed: Optional[int]
    area: Optional[float]
    rect: Optional[dict]
    count: int
    wall_ms: float
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_result(cls, command, algorithm, params, seed, res: AreaResult, wall_ms, **extra) -> "RunReport":
        rect = None
        if res.rect is not None:
            rect = _rect_dict(res.rect)
        area = res.area if res.feasible else None
        return cls(command, algorithm, params, seed, area, rect, res.count, wall_ms, extra)

    def to_json(self) -> str:
        d = asdict(self)
        if not d["extra"]:
            del d["extra"]
        return json.dumps(d)


def _rect_dict(r: Rect) -> dict:
    return {"xmin": r.xmin, "ymin": r.ymin, "xmax": r.xmax, "ymax": r.ymax}


def _load(path):
    try:
        return read_points(path)
    except DatasetError as e:
        raise UsageError(f"{path}: {e}") from None


def _positive(name, value):
    if not (value > 0 and math.isfinite(value)):
        raise UsageError(f"{name} must be a positive finite number")


def _emit(report: RunReport, summary: str) -> int:
    sys.stdout.write(report.to_json() + "\n")
    sys.stdout.flush()
    print(summary, file=sys.stderr)
    return EXIT_OK


def _summary(res: AreaResult) -> str:
    if not res.feasible:
        return "infeasible"
    r = res.rect
    return f"area {res.area!r}, count {res.count}, rect x[{r.xmin!r}, {r.xmax!r}] y[{r.ymin!r}, {r.ymax!r}]"


def cmd_min_area(args) -> int:
    ps = _load(args.file)
    if args.k < 1:
        raise UsageError("k must be >= 1")
    if args.k > len(ps):
        raise UsageError("k exceeds point count")
    t0 = time.perf_counter()
    if args.oracle:
        res, algo = oracle.oracle_min_area(ps, args.k), "oracle"
    else:
        res, algo = min_area_rect(ps, args.k, args.leaf_size), "divide-and-conquer"
    ms = (time.perf_counter() - t0) * 1e3
    params = {"file": args.file, "k": args.k, "n": len(ps)}
    return _emit(RunReport.from_result("min-area", algo, params, None, res, ms), _summary(res))


def cmd_max_points(args) -> int:
    _positive("alpha", args.alpha)
    if not 0 < args.eps <= 0.5:
        raise UsageError("eps must lie in (0, 0.5]")
    ps = _load(args.file)
    t0 = time.perf_counter()
    if args.exact:
        res, algo, seed = exact_max_points(ps, args.alpha), "exact-duality", None
    else:
        res, algo, seed = approx_max_points(ps, args.alpha, args.eps, args.seed), "sampling", args.seed
    ms = (time.perf_counter() - t0) * 1e3
    params = {"file": args.file, "alpha": args.alpha, "n": len(ps)}
    if not args.exact:
        params["eps"] = args.eps
    return _emit(RunReport.from_result("max-points", algo, params, seed, res, ms), _summary(res))


def cmd_kappa(args) -> int:
    _positive("alpha", args.alpha)
    ps = _load(args.file)
    t0 = time.perf_counter()
    kr = kappa(ps, args.alpha)
    ms = (time.perf_counter() - t0) * 1e3
    res = AreaResult(kr.witness.area, kr.witness, kr.kappa)
    params = {"file": args.file, "alpha": args.alpha, "n": len(ps)}
    report = RunReport.from_result("kappa", "recursive-candidates", params, None, res, ms, kappa=kr.kappa)
    return _emit(report, f"kappa {kr.kappa}; " + _summary(res))


def cmd_gen(args) -> int:
    if args.n < 1:
        raise UsageError("n must be >= 1")
    text = format_points(generate(args.n, args.distribution, args.seed))
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.n} points to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    ok = True
    for check in suite_checks(args.suite, args.trials, args.seed):
        res = check()
        print(res.line(), flush=True)
        ok &= res.passed
    print(f"suite {args.suite}: {'PASS' if ok else 'FAIL'}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_bench(args) -> int:
    if len(args.sizes) < 2:
        raise UsageError("need >= 2 sizes")
    if args.kmax < 1:
        raise UsageError("kmax must be >= 1")
    ks = sorted({1, *(2**i for i in range(1, args.kmax.bit_length()) if 2**i < args.kmax), args.kmax})
    rows, exponents = [], {}
    for k in ks:
        got = bench(args.sizes, k, args.seed, args.distribution, args.repeats)
        for r in got:
            rows.append({"n": r.n, "k": r.k, "ms": r.seconds * 1e3, "area": r.area})
            print(f"n={r.n:>8} k={r.k:>4} {r.seconds * 1e3:10.1f} ms  area={r.area!r}", file=sys.stderr)
        exponents[str(k)] = fitted_exponent([r.n for r in got], [max(r.seconds, 1e-6) for r in got])
    for k, e in exponents.items():
        print(f"k={k}: fitted exponent {e:.3f}", file=sys.stderr)
    out = {"command": "bench", "distribution": args.distribution, "seed": args.seed, "rows": rows, "exponents": exponents}
    sys.stdout.write(json.dumps(out) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rectcover", description="Minimum-area k-enclosing and maximum-coverage rectangles.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("min-area", help="smallest rectangle holding at least k points")
    s.add_argument("file")
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--oracle", action="store_true", help="use the brute-force enumeration (small n)")
    s.add_argument("--leaf-size", type=int, default=DEFAULT_LEAF_SIZE)
    s.set_defaults(func=cmd_min_area)

    s = sub.add_parser("max-points", help="most points covered by a rectangle of area at most alpha")
    s.add_argument("file")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--eps", type=float, default=0.25)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--exact", action="store_true", help="exact search over k instead of sampling")
    s.set_defaults(func=cmd_max_points)

    s = sub.add_parser("kappa", help="deterministic quarter-approximation with witness")
    s.add_argument("file")
    s.add_argument("--alpha", type=float, required=True)
    s.set_defaults(func=cmd_kappa)

    s = sub.add_parser("gen", help="write a seeded random instance")
    s.add_argument("n", type=int)
    s.add_argument("--distribution", choices=DISTRIBUTIONS, default="uniform")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--out", default="-", help="output file (default stdout)")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("suite", choices=SUITES)
    s.add_argument("--trials", type=int, default=None, help="instances or Monte-Carlo trials per check")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("bench", help="wall time of the exact solver against n")
    s.add_argument("sizes", type=int, nargs="+")
    s.add_argument("--kmax", type=int, default=10)
    s.add_argument("--distribution", choices=DISTRIBUTIONS, default="uniform")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--repeats", type=int, default=1)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
