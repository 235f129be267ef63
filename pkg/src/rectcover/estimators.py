"""scikit-learn style façade over the functional solvers.

``fit(X)`` takes an ``(n, 2)`` array of distinct points and stores the chosen
rectangle; ``predict(X)`` returns 1 for points inside it (closed) and 0
otherwise. All solving is delegated to the functional modules.
"""

from __future__ import annotations

import math
import numbers

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from .exact import DEFAULT_LEAF_SIZE, exact_max_points, min_area_rect
from .geometry import PointSet, contains_mask
from .kappa import kappa
from .sampling import approx_max_points


class _RectangleEstimator(BaseEstimator):
    def _points(self, X) -> PointSet:
        X = check_array(X, dtype=np.float64, ensure_min_features=2)
        if X.shape[1] != 2:
            raise ValueError(f"expected 2 columns (x, y), got {X.shape[1]}")
        self.n_features_in_ = 2
        return PointSet(X[:, 0], X[:, 1])

    def _store(self, res) -> None:
        self.rect_ = res.rect
        self.area_ = res.area
        self.count_ = res.count

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "rect_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, expected {self.n_features_in_}")
        return contains_mask(self.rect_, X[:, 0], X[:, 1]).astype(np.int64)

    def fit_predict(self, X, y=None) -> np.ndarray:
        return self.fit(X).predict(X)


def _check_int(name, value, low):
    if not isinstance(value, numbers.Integral) or isinstance(value, bool) or value < low:
        raise ValueError(f"{name} must be an integer >= {low}, got {value!r}")


class KEnclosingRectangle(_RectangleEstimator):
    """Smallest-area axis-parallel rectangle holding at least ``k`` of the points.

    Attributes after ``fit``: ``rect_``, ``area_``, ``count_``.
    """

    def __init__(self, k: int = 2, leaf_size: int = DEFAULT_LEAF_SIZE):
        self.k = k
        self.leaf_size = leaf_size

    def fit(self, X, y=None):
        _check_int("k", self.k, 1)
        _check_int("leaf_size", self.leaf_size, 1)
        ps = self._points(X)
        if self.k > len(ps):
            raise ValueError("k exceeds point count")
        self._store(min_area_rect(ps, int(self.k), int(self.leaf_size)))
        return self


class MaxCoverageRectangle(_RectangleEstimator):
    """Rectangle of area at most ``alpha`` covering as many points as possible.

    ``method`` is ``"approx"`` (randomized, ``(1 - eps)`` guarantee),
    ``"exact"`` or ``"kappa"`` (deterministic quarter-approximation).
    """

    METHODS = ("approx", "exact", "kappa")

    def __init__(self, alpha: float = 1.0, eps: float = 0.25, method: str = "approx", random_state: int = 0):
        self.alpha = alpha
        self.eps = eps
        self.method = method
        self.random_state = random_state

    def fit(self, X, y=None):
        if not (isinstance(self.alpha, numbers.Real) and self.alpha > 0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be a positive finite number, got {self.alpha!r}")
        if self.method not in self.METHODS:
            raise ValueError(f"method must be one of {self.METHODS}, got {self.method!r}")
        ps = self._points(X)
        if self.method == "exact":
            self._store(exact_max_points(ps, float(self.alpha)))
        elif self.method == "kappa":
            kr = kappa(ps, float(self.alpha))
            self.rect_, self.area_, self.count_ = kr.witness, kr.witness.area, kr.kappa
        else:
            if not 0 < self.eps <= 0.5:
                raise ValueError(f"eps must lie in (0, 0.5], got {self.eps!r}")
            seed = 0 if self.random_state is None else int(self.random_state)
            self._store(approx_max_points(ps, float(self.alpha), float(self.eps), seed))
        return self
