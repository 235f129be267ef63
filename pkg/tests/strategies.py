"""Hypothesis strategies for point sets."""

import numpy as np
from hypothesis import strategies as st

from rectcover import PointSet


@st.composite
def point_sets(draw, min_size=1, max_size=20, grid=None):
    """Distinct points; with ``grid`` the coordinates are small integers (many ties)."""
    if grid is None:
        grid = draw(st.booleans())
    if grid:
        side = draw(st.integers(2, 8))
        coord = st.tuples(st.integers(0, side - 1), st.integers(0, side - 1))
        max_size = min(max_size, side * side)
    else:
        f = st.floats(-100, 100, allow_nan=False, allow_infinity=False, width=32)
        coord = st.tuples(f, f)
    pts = draw(st.lists(coord, min_size=min_size, max_size=max_size, unique=True))
    arr = np.array(pts, dtype=np.float64).reshape(-1, 2)
    ids = draw(st.permutations(range(len(pts))))
    return PointSet(arr[:, 0], arr[:, 1], ids)
