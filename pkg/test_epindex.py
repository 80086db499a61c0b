# test_epindex.py
import random
from collections import Counter

import pytest

from epindex import EPIndex, LiftedPoint, ep_build, ep_query, scan_extreme
from errors import EmptyInput
from hull3d import FlatPointSet, convex_hull_3d, dot
from trapmap import Segment, TrapezoidalMap, hpoint


def _random_points(seed, count, span=40):
    rng = random.Random(seed)
    return [
        LiftedPoint(u=rng.randint(-span, span), v=rng.randint(-span, span), w=rng.randint(-span, span), tag=i)
        for i in range(count)
    ]


def _agrees(index, points, rng, queries=200, span=60):
    for _ in range(queries):
        d = (rng.randint(-span, span), rng.randint(-span, span), 1)
        _, value = ep_query(index, d)
        _, expected = scan_extreme(points, d)
        assert value == expected


def test_scan_prefers_smallest_tag_on_ties():
    points = [LiftedPoint(0, 0, 5, tag=3), LiftedPoint(1, 0, 4, tag=1), LiftedPoint(0, 0, 5, tag=2)]
    best, value = scan_extreme(points, (1, 0, 1))
    assert value == 5
    assert best.tag == 1


def test_empty_input():
    with pytest.raises(EmptyInput):
        ep_build([])
    with pytest.raises(EmptyInput):
        scan_extreme([], (0, 0, 1))


def test_single_point():
    index = ep_build([LiftedPoint(2, 3, 4, tag=0)])
    assert index.mode == "single"
    assert ep_query(index, (1, 1)) == (LiftedPoint(2, 3, 4, tag=0), 9)


def test_small_sets_use_the_scan():
    index = ep_build(_random_points(1, 10), scan_threshold=64)
    assert index.mode == "scan"
    _agrees(index, _random_points(1, 10), random.Random(1), queries=50)


def test_duplicate_projections_keep_the_highest_point():
    points = [LiftedPoint(0, 0, 1, tag=0), LiftedPoint(0, 0, 7, tag=1), LiftedPoint(1, 1, 0, tag=2)]
    index = ep_build(points, scan_threshold=0)
    assert {p.tag for p in index.points} == {1, 2}


def test_collinear_projections_use_the_line_mode():
    rng = random.Random(4)
    points = [LiftedPoint(u=3 * t, v=2 * t, w=rng.randint(-50, 50), tag=t) for t in range(30)]
    index = ep_build(points, scan_threshold=0)
    assert index.mode == "line"
    _agrees(index, points, rng)


@pytest.mark.parametrize("seed", range(5))
def test_map_mode_matches_scan(seed):
    points = _random_points(seed, 40)
    counters = Counter()
    index = ep_build(points, seed=seed, scan_threshold=0, counters=counters)
    assert index.mode == "map"
    _agrees(index, points, random.Random(seed))
    assert counters["hull_builds"] == 1
    assert counters["ep_queries"] == 200


def test_coplanar_points_use_a_ray_fan():
    rng = random.Random(9)
    points = []
    for i in range(25):
        u, v = rng.randint(-30, 30), rng.randint(-30, 30)
        points.append(LiftedPoint(u=u, v=v, w=2 * u - 3 * v + 5, tag=i))
    index = ep_build(points, scan_threshold=0)
    assert index.mode == "map"
    _agrees(index, points, rng)


def test_prefix_sum_shape():
    # lifted points of a block are concave-up in u, as the solver builds them
    points = [LiftedPoint(u=j, v=j * j, w=-j * j * j, tag=j) for j in range(20)]
    index = ep_build(points, scan_threshold=0)
    _agrees(index, points, random.Random(0), span=500)


def test_far_directions_fall_back_to_scan():
    points = _random_points(2, 30)
    counters = Counter()
    index = EPIndex(points, scan_threshold=0, counters=counters)
    far = index.window + 1
    _, value = index.query(far, -far)
    assert value == scan_extreme(points, (far, -far, 1))[1]
    assert counters["ep_scans"] > 0


def test_non_unit_third_component_is_scanned():
    points = _random_points(3, 30)
    index = ep_build(points, scan_threshold=0)
    assert ep_query(index, (1, 2, 3))[1] == scan_extreme(points, (1, 2, 3))[1]


def test_cube_hull():
    corners = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
    facets = convex_hull_3d(corners, random.Random(1))
    assert len(facets) == 12
    for f in facets:
        assert all(dot(f.normal, p) <= f.offset for p in corners)


def test_hull_rejects_flat_input():
    with pytest.raises(FlatPointSet):
        convex_hull_3d([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])


def test_interior_points_are_not_hull_vertices():
    pts = [(0, 0, 0), (10, 0, 0), (0, 10, 0), (0, 0, 10), (1, 1, 1), (2, 1, 1)]
    facets = convex_hull_3d(pts, random.Random(3))
    used = {i for f in facets for i in f.vertices}
    assert used == {0, 1, 2, 3}


def test_trapezoidal_map_locates_between_segments():
    low = Segment(hpoint(-10, 0, 1), hpoint(10, 0, 1), labels=[1])
    high = Segment(hpoint(-10, 5, 1), hpoint(10, 5, 1), labels=[2])
    tmap = TrapezoidalMap([low, high], bound=100, rng=random.Random(0))
    trap = tmap.locate(hpoint(0, 2, 1))
    assert trap.bottom is low and trap.top is high
    assert tmap.candidates(hpoint(0, 2, 1)) == {1, 2}
    assert tmap.candidates(hpoint(0, 7, 1)) == {2}


def test_trapezoidal_map_with_shared_endpoints():
    centre = hpoint(0, 0, 1)
    spokes = [
        Segment(centre, hpoint(20, 1, 1), labels=[0, 1]),
        Segment(centre, hpoint(-3, 20, 1), labels=[1, 2]),
        Segment(centre, hpoint(-20, -5, 1), labels=[2, 3]),
        Segment(centre, hpoint(4, -20, 1), labels=[3, 0]),
    ]
    tmap = TrapezoidalMap(spokes, bound=50, rng=random.Random(7))
    assert tmap.candidates(hpoint(10, 4, 1)) & {0, 1}
    assert tmap.candidates(hpoint(-10, -1, 1)) & {2, 3}


@pytest.mark.slow
def test_thousand_points_ten_thousand_directions():
    points = _random_points(17, 1000, span=10**6)
    index = ep_build(points, seed=17, scan_threshold=0)
    assert index.mode == "map"
    _agrees(index, points, random.Random(17), queries=10_000, span=10**4)
