# viz.py
import logging
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from shapely.geometry import Polygon as ShapelyPolygon
from shapely.ops import unary_union
from shapely.validation import make_valid

from core import GeneralPolygon, OrthoPolygon, decompose_rectangles, twice_signed_area
from polyclip import clip_convex, triangulate

logger = logging.getLogger(__name__)

Polygon = Union[OrthoPolygon, GeneralPolygon]
MARGIN = Fraction(1, 20)


def _points(polygon: Polygon) -> List[Tuple[Fraction, Fraction]]:
    if isinstance(polygon, OrthoPolygon):
        return [(Fraction(x), Fraction(y)) for x, y in polygon.coords()]
    return list(polygon.vertices)


def _convex_pieces(polygon: Polygon) -> List[Sequence[Tuple]]:
    if isinstance(polygon, OrthoPolygon):
        return [[(r.l, r.b), (r.r, r.b), (r.r, r.t), (r.l, r.t)] for r in decompose_rectangles(polygon)]
    return triangulate(polygon.vertices)


def intersection_pieces(P: Polygon, Q: Polygon, tau) -> List[List[Tuple]]:
    """Exact convex pieces of P and Q + tau."""
    tx, ty = Fraction(tau[0]), Fraction(tau[1])
    pieces_p = _convex_pieces(P)
    out = []
    for piece in _convex_pieces(Q):
        moved = [(x + tx, y + ty) for x, y in piece]
        for other in pieces_p:
            clipped = clip_convex(moved, other)
            if clipped and twice_signed_area(clipped) != 0:
                out.append(clipped)
    return out


def _num(value) -> str:
    return format(float(value), ".10g")


def _path(points) -> str:
    head, *rest = points
    return "M " + " L ".join(f"{_num(x)} {_num(-y)}" for x, y in [head] + rest) + " Z"


def _parts(geometry):
    if hasattr(geometry, "geoms"):
        for part in geometry.geoms:
            yield from _parts(part)
    else:
        yield geometry


def render_svg(P: Polygon, Q: Polygon, tau=(0, 0)) -> str:
    """P outlined, Q + tau outlined and their intersection shaded.

    The y axis points up, so every y is negated on output.
    """
    tx, ty = Fraction(tau[0]), Fraction(tau[1])
    outline_p = _points(P)
    outline_q = [(x + tx, y + ty) for x, y in _points(Q)]
    everything = outline_p + outline_q
    xs = [x for x, _ in everything]
    ys = [y for _, y in everything]
    min_x, max_x, min_y, max_y = min(xs), max(xs), min(ys), max(ys)
    pad_x = (max_x - min_x) * MARGIN
    pad_y = (max_y - min_y) * MARGIN
    view = (min_x - pad_x, -(max_y + pad_y), max_x - min_x + 2 * pad_x, max_y - min_y + 2 * pad_y)

    # float rounding can pinch hair-thin pieces into invalid rings
    shapes = [ShapelyPolygon([(float(x), float(y)) for x, y in piece]) for piece in intersection_pieces(P, Q, tau)]
    shaded = unary_union([s if s.is_valid else make_valid(s) for s in shapes])
    polygons = [g for g in _parts(shaded) if g.geom_type == "Polygon" and not g.is_empty]
    stroke = _num(max(view[2], view[3]) / 400)

    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="{}">'.format(" ".join(_num(v) for v in view)),
        f'  <path d="{_path(outline_p)}" fill="none" stroke="#1f4e79" stroke-width="{stroke}"/>',
        f'  <path d="{_path(outline_q)}" fill="none" stroke="#b03a2e" stroke-width="{stroke}"/>',
    ]
    for poly in sorted(polygons, key=lambda g: g.bounds):
        rings = [list(poly.exterior.coords)[:-1]] + [list(r.coords)[:-1] for r in poly.interiors]
        d = " ".join(_path(ring) for ring in rings)
        lines.append(f'  <path d="{d}" fill="#7f8c8d" fill-opacity="0.6" fill-rule="evenodd" stroke="none"/>')
    lines.append("</svg>")
    logger.debug("rendered %d shaded regions", len(polygons))
    return "\n".join(lines) + "\n"


def write_svg(P: Polygon, Q: Polygon, tau, path: str) -> None:
    with open(path, "w") as handle:
        handle.write(render_svg(P, Q, tau))
    logger.info("wrote %s", path)
