"""Point-file I/O and seeded instance generators.

File format: UTF-8 text, one point per line as two whitespace-separated
decimal numbers (scientific notation allowed). Lines starting with ``#`` and
blank lines are skipped. Ids are assigned in file order from 0.
"""

from __future__ import annotations

import numpy as np

from .geometry import PointSet

DISTRIBUTIONS = ("uniform", "clusters")


class DatasetError(ValueError):
    pass


def parse_points(text: str) -> PointSet:
    xs, ys = [], []
    seen: dict[tuple[float, float], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise DatasetError(f"line {lineno}: expected 2 numbers, got {len(parts)}")
        try:
            x, y = float(parts[0]), float(parts[1])
        except ValueError:
            raise DatasetError(f"line {lineno}: cannot parse {line!r}") from None
        if not (np.isfinite(x) and np.isfinite(y)):
            raise DatasetError(f"line {lineno}: non-finite coordinate")
        if (x, y) in seen:
            raise DatasetError(f"line {lineno}: duplicate of point on line {seen[(x, y)]}")
        seen[(x, y)] = lineno
        xs.append(x)
        ys.append(y)
    return PointSet(xs, ys)


def read_points(path) -> PointSet:
    with open(path, encoding="utf-8") as fh:
        return parse_points(fh.read())


def format_points(ps: PointSet) -> str:
    return "".join(f"{float(x)!r} {float(y)!r}\n" for x, y in zip(ps.xs, ps.ys))


def write_points(ps: PointSet, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_points(ps))


def _clusters(n: int, rng) -> np.ndarray:
    # three blobs with distinct spreads and anisotropy
    centers = np.array([[0.25, 0.3], [0.7, 0.65], [0.45, 0.8]])
    spreads = np.array([[0.01, 0.03], [0.05, 0.02], [0.15, 0.12]])
    weights = np.array([0.2, 0.3, 0.5])
    comp = rng.choice(3, size=n, p=weights)
    return centers[comp] + spreads[comp] * rng.standard_normal((n, 2))


def generate(n: int, distribution: str = "uniform", seed: int = 0) -> PointSet:
    """Deterministic instance; duplicate coordinate pairs are resampled."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if distribution not in DISTRIBUTIONS:
        raise ValueError(f"unknown distribution {distribution!r}")
    rng = np.random.default_rng(seed)
    draw = (lambda m: rng.random((m, 2))) if distribution == "uniform" else (lambda m: _clusters(m, rng))
    pts = draw(n)
    while True:
        _, first = np.unique(pts, axis=0, return_index=True)
        if first.shape[0] == n:
            return PointSet.from_array(pts)
        dup = np.setdiff1d(np.arange(n), first)
        pts[dup] = draw(dup.shape[0])
