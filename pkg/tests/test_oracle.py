import pytest
from hypothesis import given
from hypothesis import strategies as st

from rectcover import PointSet, SplitLine, bbox, oracle_max_points, oracle_min_area, oracle_min_area_crossing
from rectcover.oracle import oracle_min_area_table, subset_min_area

from strategies import point_sets


def test_min_area_examples(staircase):
    assert oracle_min_area(staircase, 2).area == 1.0
    assert oracle_min_area(staircase, 1).area == 0.0
    assert oracle_min_area(staircase, 4).area == bbox(staircase).area == 9.0
    with pytest.raises(ValueError):
        oracle_min_area(staircase, 5)
    with pytest.raises(ValueError):
        oracle_min_area(staircase, 0)


def test_crossing_examples(staircase):
    assert oracle_min_area_crossing(staircase, SplitLine(1.5), 2).area == 1.0
    low = SplitLine(-1.0)
    for k in range(1, 5):
        restricted = oracle_min_area_crossing(staircase, low, k)
        assert restricted.area >= oracle_min_area(staircase, k).area
        assert restricted.rect.ymin <= -1.0
    # a zero-width column from a point down to the line
    assert oracle_min_area_crossing(staircase, low, 1).area == 0.0


def test_max_points_examples(staircase):
    assert oracle_max_points(staircase, 9.0) == 4
    assert oracle_max_points(staircase, 100.0) == 4
    assert oracle_max_points(staircase, 1.0) == 2
    assert oracle_max_points(staircase, 0.5) == 1
    with pytest.raises(ValueError):
        oracle_max_points(staircase, 0.0)


@given(point_sets(max_size=9))
def test_double_oracle(ps):
    for k in range(1, len(ps) + 1):
        assert oracle_min_area(ps, k).area == subset_min_area(ps, k)


@given(point_sets(max_size=20))
def test_duality_round_trip(ps):
    table = oracle_min_area_table(ps)
    for k in range(1, len(ps) + 1):
        res = oracle_min_area(ps, k)
        assert res.area == table[k]
        assert res.count >= k
        if res.area > 0:
            assert oracle_max_points(ps, res.area) >= k


@given(point_sets(min_size=2, max_size=20), st.floats(-120, 120))
def test_restriction(ps, ly):
    if (ps.ys == ly).any():
        return
    line = SplitLine(ly)
    for k in range(1, len(ps) + 1):
        assert oracle_min_area_crossing(ps, line, k).area >= oracle_min_area(ps, k).area


def test_table_is_monotone(rng):
    ps = PointSet.from_array(rng.random((25, 2)))
    table = oracle_min_area_table(ps)
    assert table[0] == table[1] == 0.0
    assert all(a <= b for a, b in zip(table[1:], table[2:]))
