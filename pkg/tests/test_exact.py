import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rectcover import (
    PointSet,
    Rect,
    SplitLine,
    bbox,
    build_qsets,
    choose_split,
    count_in,
    exact_max_points,
    merge_value,
    min_area_rect,
    oracle_max_points,
    oracle_min_area,
    oracle_min_area_crossing,
    phi,
    preprocess,
    query,
)
from rectcover.datasets import generate
from rectcover.oracle import oracle_min_area_table

from strategies import point_sets


def test_choose_split_examples():
    assert choose_split(PointSet.from_points([(0, 0), (1, 1)])).y == 0.5
    assert choose_split(PointSet.from_points([(0, 0), (1, 1), (2, 2), (3, 3)])).y == 1.5
    ps = PointSet.from_points([(0, 0), (1, 5), (2, 10)])
    line = choose_split(ps)
    below = int(np.count_nonzero(ps.ys < line.y))
    assert 0 < line.y < 10 and {below, len(ps) - below} == {1, 2}
    with pytest.raises(ValueError):
        choose_split(PointSet([0.0], [0.0]))


@given(point_sets(min_size=2, max_size=40))
def test_split_balanced(ps):
    line = choose_split(ps)
    # with tied y values the (y, id) order decides the side
    assert line.below == len(ps) // 2
    assert max(line.below, len(ps) - line.below) <= math.ceil(len(ps) / 2)


def test_qsets_slab_example():
    ps = PointSet.from_points([(0, 1), (1, 2)])
    qs = build_qsets(ps, SplitLine(0.0), 2)
    assert sorted(p.id for p in qs[ps[1]]) == [0, 1]
    one = PointSet([3.0], [4.0])
    assert [p.id for p in build_qsets(one, SplitLine(0.0), 1)[one[0]]] == [0]


def test_qsets_point_on_line_rejected():
    ps = PointSet.from_points([(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        build_qsets(ps, SplitLine(1.0), 1)


def test_qsets_full_budget_is_slab_union(rng):
    ps = PointSet.from_array(rng.random((30, 2)))
    line = choose_split(ps)
    qs = build_qsets(ps, line, len(ps))
    dist = np.abs(ps.ys - line.y)
    for i, p in enumerate(ps):
        got = set(qs[p].ids.tolist())
        # the two median points are equidistant; the distance ranks order them
        assert set(np.flatnonzero(dist < dist[i]).tolist()) | {i} <= got
        assert got <= set(np.flatnonzero(dist <= dist[i]).tolist())


@given(point_sets(min_size=2, max_size=30), st.integers(1, 8))
def test_qsets_subset_and_size(ps, k):
    k = min(k, len(ps))
    qs = build_qsets(ps, choose_split(ps), k)
    assert np.all(qs.sizes() <= 4 * k)
    for p in ps:
        q = qs[p]
        assert p.id in q.ids
        assert set(q.ids.tolist()) <= set(ps.ids.tolist())


def test_merge_value_examples(staircase):
    qs = build_qsets(staircase, SplitLine(1.5), 4)
    assert merge_value(staircase, SplitLine(1.5), 2, qs).area == 1.0
    assert merge_value(staircase, SplitLine(1.5), 1, qs).area == 0.0
    qs = build_qsets(staircase, SplitLine(2.5), 4)
    res = merge_value(staircase, SplitLine(2.5), 2, qs)
    # [2,3]^2 crosses the line; [0,1]^2 ties on area and wins on xmin
    assert res.area == 1.0 and res.count == 2
    with pytest.raises(ValueError):
        merge_value(staircase, SplitLine(2.5), 5, qs)


@given(point_sets(min_size=2, max_size=25))
def test_merge_value_sandwich(ps):
    line = choose_split(ps)
    qs = build_qsets(ps, line, len(ps))
    table = oracle_min_area_table(ps)
    for k in range(1, len(ps) + 1):
        v = merge_value(ps, line, k, qs)
        assert v.area >= table[k]
        if oracle_min_area_crossing(ps, line, k).area == table[k]:
            assert v.area == table[k]
        # a budget-k build is the k-prefix of the full one, and the fused
        # kernel agrees with the public anchored solver on those sets
        own = build_qsets(ps, line, k)
        assert merge_value(ps, line, k, own) == v
        assert v.area == min(phi(own[p], p, k).area for p in ps)


def test_preprocess_examples():
    one = PointSet([1.0], [2.0])
    tree = preprocess(one, 1)
    assert tree.root.is_leaf and query(tree, 1).area == 0.0
    ps = generate(8, "uniform", 3)
    tree = preprocess(ps, 2, leaf_size=1)
    assert tree.depth() <= 4
    with pytest.raises(ValueError):
        preprocess(ps, 9)
    with pytest.raises(ValueError):
        preprocess(ps, 0)


@pytest.mark.parametrize("leaf_size", [1, 3, 8])
def test_tree_levels_partition(leaf_size):
    ps = generate(100, "clusters", 1)
    tree = preprocess(ps, 3, leaf_size=leaf_size)
    by_depth = {}
    for node in tree.nodes():
        by_depth.setdefault(node.depth, []).append(node)
        if not node.is_leaf:
            ys = ps.ys
            assert np.all(ys[node.below.idx] < node.line.y) and np.all(ys[node.above.idx] > node.line.y)
            assert node.below.size + node.above.size == node.size
    assert sum(n.size for n in by_depth[0]) == 100
    # every point is in exactly one leaf
    leaves = np.concatenate([n.idx for n in tree.nodes() if n.is_leaf])
    assert sorted(leaves.tolist()) == list(range(100))
    assert tree.depth() <= math.ceil(math.log2(100)) + 1


def test_query_examples(staircase):
    tree = preprocess(staircase, 4)
    assert query(tree, 2).area == 1.0
    assert query(tree, 1).area == 0.0
    assert query(tree, 4).area == 9.0
    with pytest.raises(ValueError):
        query(tree, 5)


def test_min_area_examples(staircase, rng):
    assert min_area_rect(staircase, 2).area == 1.0
    ps = PointSet.from_array(rng.random((30, 2)))
    assert min_area_rect(ps, 30).area == bbox(ps).area
    table = oracle_min_area_table(ps)
    assert [min_area_rect(ps, k).area for k in range(1, 31)] == table[1:].tolist()
    with pytest.raises(ValueError):
        min_area_rect(ps, 31)
    with pytest.raises(ValueError):
        min_area_rect(ps, 3, leaf_size=0)


@given(point_sets(max_size=30), st.sampled_from([1, 2, 8]))
def test_query_matches_oracle(ps, leaf_size):
    tree = preprocess(ps, len(ps), leaf_size=leaf_size)
    table = oracle_min_area_table(ps)
    prev = -1.0
    for k in range(1, len(ps) + 1):
        res = query(tree, k)
        assert res.area == table[k]
        assert res.area >= prev
        prev = res.area
        assert count_in(ps, res.rect) == res.count >= k
        assert res.rect.area == res.area


@given(point_sets(max_size=25, grid=True), st.sampled_from([(2.0, 3.0), (-1.0, 5.0), (0.1, 10.0)]))
def test_scaled_witness_is_feasible(ps, scale):
    a1, a2 = scale
    mapped = ps.map(a1, 7.0, a2, -3.0)
    for k in range(1, len(ps) + 1):
        base, img = min_area_rect(ps, k), min_area_rect(mapped, k)
        assert math.isclose(img.area, abs(a1 * a2) * base.area, rel_tol=1e-9, abs_tol=1e-9)
        r = base.rect
        xs = sorted((a1 * r.xmin + 7.0, a1 * r.xmax + 7.0))
        ys = sorted((a2 * r.ymin - 3.0, a2 * r.ymax - 3.0))
        assert count_in(mapped, Rect(xs[0], xs[1], ys[0], ys[1])) >= k


@given(point_sets(min_size=2, max_size=25), st.data())
def test_bound_semantics(ps, data):
    table = oracle_min_area_table(ps)
    k = data.draw(st.integers(1, len(ps)))
    tree = preprocess(ps, len(ps))
    opt = table[k]
    assert query(tree, k, bound=opt).area == opt
    assert min_area_rect(ps, k, bound=opt * 2 + 1).area == opt
    ff = query(tree, k, bound=opt * 2 + 1, first_fit=True)
    assert ff.area <= opt * 2 + 1 and ff.count >= k
    if opt > 0:
        assert query(tree, k, bound=opt / 2).area > opt / 2


@given(point_sets(max_size=25), st.floats(1e-3, 1e4))
def test_exact_max_points_matches_oracle(ps, alpha):
    res = exact_max_points(ps, alpha)
    assert res.count == oracle_max_points(ps, alpha)
    assert res.area <= alpha
    assert res.area == oracle_min_area(ps, res.count).area


def test_exact_max_points_examples(staircase):
    assert exact_max_points(staircase, 1.0).count == 2
    assert exact_max_points(staircase, 9.0).count == 4
    with pytest.raises(ValueError):
        exact_max_points(staircase, 0.0)
