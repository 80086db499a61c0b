# test_core.py
import random
from fractions import Fraction

import pytest

from core import (
    Rect,
    decompose_rectangles,
    general_polygon_area,
    locate_point,
    polygon_area,
    rect_area,
    rects_overlap,
    to_general,
    validate_general_polygon,
    validate_polygon,
)
from errors import (
    CoordinateOutOfRange,
    NonSimpleInput,
    NotClosedOrthogonal,
    SelfIntersecting,
    TooFewVertices,
)
from genbench import gen_random_ortho


def test_unit_square_is_kept_as_is(unit_square):
    assert unit_square.coords() == [(0, 0), (1, 0), (1, 1), (0, 1)]


def test_clockwise_input_is_reversed():
    p = validate_polygon([(0, 0), (0, 1), (1, 1), (1, 0)])
    assert p.coords() == [(0, 0), (1, 0), (1, 1), (0, 1)]


def test_closing_duplicate_and_collinear_vertices_are_dropped():
    p = validate_polygon([(0, 0), (1, 0), (2, 0), (2, 2), (0, 2), (0, 0)])
    assert p.coords() == [(0, 0), (2, 0), (2, 2), (0, 2)]


def test_validation_is_idempotent(l_shape):
    assert validate_polygon(l_shape.vertices) == l_shape


def test_diagonal_edge_is_rejected():
    with pytest.raises(NotClosedOrthogonal) as err:
        validate_polygon([(0, 0), (1, 0), (1, 1)])
    assert err.value.index == 2
    assert err.value.exit_code == 2


def test_crossing_edges_are_rejected():
    with pytest.raises(SelfIntersecting):
        validate_polygon([(0, 0), (2, 0), (2, 2), (1, 2), (1, -1), (0, -1)])


def test_spike_is_rejected():
    with pytest.raises(SelfIntersecting):
        validate_polygon([(0, 0), (3, 0), (3, 1), (3, 0)])


def test_too_few_vertices():
    with pytest.raises(TooFewVertices):
        validate_polygon([(0, 0), (1, 0)])


def test_coordinate_bound():
    with pytest.raises(CoordinateOutOfRange):
        validate_polygon([(0, 0), (2 ** 21, 0), (2 ** 21, 1), (0, 1)])


@pytest.mark.parametrize("bad", [1.5, Fraction(1, 2), "x", float("inf")])
def test_non_integer_coordinates_are_rejected(bad):
    with pytest.raises(CoordinateOutOfRange) as info:
        validate_polygon([(0, 0), (bad, 0), (bad, 1), (0, 1)])
    assert info.value.index == 1


def test_integral_floats_are_accepted():
    expected = validate_polygon([(0, 0), (2, 0), (2, 1), (0, 1)])
    assert validate_polygon([(0.0, 0), (2.0, 0), (2, 1.0), (0, 1)]) == expected


@pytest.mark.parametrize(
    "vertices, area",
    [
        ([(0, 0), (1, 0), (1, 1), (0, 1)], 1),
        ([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)], 3),
        ([(0, 0), (10, 0), (10, 10), (0, 10)], 100),
    ],
)
def test_polygon_area(vertices, area):
    assert polygon_area(validate_polygon(vertices)) == area


def test_decompose_unit_square(unit_square):
    assert decompose_rectangles(unit_square) == (Rect(0, 1, 0, 1),)


def test_decompose_l_shape(l_shape):
    rects = decompose_rectangles(l_shape)
    assert len(rects) == 2
    assert sum(rect_area(r) for r in rects) == 3
    assert not rects_overlap(rects[0], rects[1])


def _check_decomposition(p):
    rects = decompose_rectangles(p)
    assert sum(rect_area(r) for r in rects) == polygon_area(p)
    assert len(rects) <= p.n
    xs, ys = set(p.xs()), set(p.ys())
    for i, r in enumerate(rects):
        assert r.l < r.r and r.b < r.t
        assert {r.l, r.r} <= xs and {r.b, r.t} <= ys
        for other in rects[i + 1:]:
            assert not rects_overlap(r, other)


@pytest.mark.parametrize("seed", range(25))
def test_decomposition_of_random_polygons(seed):
    _check_decomposition(gen_random_ortho(40, seed, 64))


def test_point_sampling_matches_rectangles():
    rng = random.Random(5)
    for seed in range(5):
        p = gen_random_ortho(16, seed, 20)
        rects = decompose_rectangles(p)
        box = p.bbox()
        for _ in range(200):
            x = rng.randint(box.l - 1, box.r + 1)
            y = rng.randint(box.b - 1, box.t + 1)
            interior = sum(r.l < x < r.r and r.b < y < r.t for r in rects)
            closed = sum(r.l <= x <= r.r and r.b <= y <= r.t for r in rects)
            where = locate_point(p, (x, y))
            if where == "inside":
                assert interior == 1 or closed >= 2
            elif where == "boundary":
                assert closed >= 1 and interior == 0
            else:
                assert closed == 0


def test_locate_point_l_shape(l_shape):
    assert locate_point(l_shape, (Fraction(1, 2), Fraction(3, 2))) == "inside"
    assert locate_point(l_shape, (Fraction(3, 2), Fraction(3, 2))) == "outside"
    assert locate_point(l_shape, (1, 1)) == "boundary"
    assert locate_point(l_shape, (2, Fraction(1, 2))) == "boundary"


def test_general_polygon_allows_anti_diagonal_edges():
    g = validate_general_polygon([(0, 0), (2, 0), (0, 2)], require_hvd=True)
    assert general_polygon_area(g) == 2


def test_general_polygon_rejects_rising_diagonal_under_hvd():
    with pytest.raises(NotClosedOrthogonal):
        validate_general_polygon([(0, 0), (2, 0), (2, 2)], require_hvd=True)
    assert general_polygon_area(validate_general_polygon([(0, 0), (2, 0), (2, 2)])) == 2


def test_general_polygon_bow_tie():
    with pytest.raises(NonSimpleInput):
        validate_general_polygon([(0, 0), (2, 2), (2, 0), (0, 2)])


def test_general_polygon_rational_coordinates():
    half = Fraction(1, 2)
    g = validate_general_polygon([(0, 0), (half, 0), (half, half), (0, half)])
    assert general_polygon_area(g) == Fraction(1, 4)


def test_to_general_keeps_area(l_shape):
    assert general_polygon_area(to_general(l_shape)) == polygon_area(l_shape)


@pytest.mark.parametrize(
    "shape, area, rect_count", [("spiral", 23, 6), ("h_shape", 7, 5), ("w_shape", 13, 5)]
)
def test_non_monotone_shapes(request, shape, area, rect_count):
    p = request.getfixturevalue(shape)
    assert polygon_area(p) == area
    assert len(decompose_rectangles(p)) == rect_count
    _check_decomposition(p)


def test_spiral_pocket_is_outside(spiral):
    assert locate_point(spiral, (2, Fraction(3, 2))) == "outside"
    assert locate_point(spiral, (2, Fraction(7, 2))) == "outside"
    assert locate_point(spiral, (Fraction(7, 2), Fraction(7, 2))) == "inside"
