"""Minimum-area k-enclosing rectangles and maximum-coverage rectangles of bounded area."""

from .anchored import phi, phi_all_k, phi_one_side
from .batched import batched_k_extreme, reflect
from .datasets import DatasetError, generate, parse_points, read_points, write_points
from .estimators import KEnclosingRectangle, MaxCoverageRectangle
from .exact import (
    DCTree,
    QSets,
    SplitLine,
    build_qsets,
    choose_split,
    exact_max_points,
    merge_value,
    min_area_rect,
    preprocess,
    query,
)
from .geometry import AreaResult, Point, PointSet, Rect, bbox, contains, count_in
from .kappa import CandidateRects, KappaResult, candidate_rects, kappa
from .oracle import oracle_max_points, oracle_min_area, oracle_min_area_crossing, oracle_phi
from .rangecount import CountStructure
from .sampling import (
    MonteCarloReport,
    SamplingPlan,
    approx_max_points,
    approx_max_points_os,
    rho_sample,
    sampling_rate,
    verify_sampling_events,
)

__version__ = "0.1.0"
