import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rectcover import Point, PointSet, oracle_min_area, oracle_phi, phi, phi_all_k, phi_one_side

from strategies import point_sets


@pytest.fixture
def desc():
    # q = (0, 3) is the top-left point of a descending staircase
    return PointSet.from_points([(0, 3), (1, 2), (2, 1), (3, 0)])


def test_top_example(desc):
    res = phi_one_side(desc, desc[0], 2, "top")
    assert res.area == 1.0
    assert res.rect.as_tuple() == (0.0, 1.0, 2.0, 3.0)


def test_singleton():
    Q = PointSet([0.0], [0.0])
    res = phi_one_side(Q, Q[0], 1, "top")
    assert res.area == 0.0 and res.rect.as_tuple() == (0.0, 0.0, 0.0, 0.0)
    assert math.isinf(phi(Q, Q[0], 2).area)


def test_infeasible_side_and_other_side():
    Q = PointSet.from_points([(0, 0), (1, 2)])
    assert math.isinf(phi_one_side(Q, Q[0], 2, "top").area)
    res = phi(Q, Q[0], 2)
    assert res.area == 2.0 and res.rect.as_tuple() == (0.0, 1.0, 0.0, 2.0)


def test_all_points(desc):
    res = phi(desc, desc[0], 4)
    assert res.area == 9.0 and res.rect.as_tuple() == (0.0, 3.0, 0.0, 3.0)


def test_all_k(desc):
    values = [r.area for r in phi_all_k(desc, desc[0])]
    assert values == [oracle_phi(desc, desc[0], k).area for k in range(1, 5)]
    assert values[0] == 0.0 and values[1] == 1.0 and values[3] == 9.0
    assert len(phi_all_k(PointSet([0.0], [0.0]), Point(0.0, 0.0, 0))) == 1


def test_errors(desc):
    with pytest.raises(ValueError):
        phi(desc, Point(9.0, 9.0, 0), 1)
    with pytest.raises(ValueError):
        phi(desc, desc[0], 0)
    with pytest.raises(ValueError):
        phi_one_side(desc, desc[0], 1, "left")


@given(point_sets(max_size=14), st.data())
def test_matches_anchored_oracle(Q, data):
    q = Q[data.draw(st.integers(0, len(Q) - 1))]
    for k in range(1, len(Q) + 1):
        sides = [phi_one_side(Q, q, k, s).area for s in ("top", "bottom")]
        assert phi(Q, q, k).area == min(sides) == oracle_phi(Q, q, k).area


@given(point_sets(max_size=14), st.data())
def test_witness_and_bounds(Q, data):
    q = Q[data.draw(st.integers(0, len(Q) - 1))]
    prev = -1.0
    for k in range(1, len(Q) + 1):
        res = phi(Q, q, k)
        assert res.area >= oracle_min_area(Q, k).area
        assert res.area >= prev
        prev = res.area
        if res.feasible:
            r = res.rect
            assert r.xmin <= q.x <= r.xmax
            assert q.y in (r.ymin, r.ymax)
            assert res.count >= k and r.area == res.area
    assert phi(Q, q, 1).area == 0.0
