# core.py
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, NamedTuple, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict
from sortedcontainers import SortedDict

from config import COORD_LIMIT
from errors import (
    CoordinateOutOfRange,
    DegenerateArea,
    NonSimpleInput,
    NotClosedOrthogonal,
    SelfIntersecting,
    TooFewVertices,
)

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]
RationalPoint = Tuple[Fraction, Fraction]


class Point(BaseModel):
    model_config = ConfigDict(frozen=True)

    x: int
    y: int

    def as_tuple(self) -> Tuple[int, int]:
        return (self.x, self.y)


class OrthoPolygon(BaseModel):
    """A simple rectilinear polygon in normalized form.

    Vertices run counterclockwise, edges alternate between horizontal and
    vertical and no three consecutive vertices are collinear. Build it with
    validate_polygon; the constructor does not re-check these properties.
    """

    model_config = ConfigDict(frozen=True)

    vertices: Tuple[Point, ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def coords(self) -> List[Tuple[int, int]]:
        return [(v.x, v.y) for v in self.vertices]

    def xs(self) -> List[int]:
        return sorted({v.x for v in self.vertices})

    def ys(self) -> List[int]:
        return sorted({v.y for v in self.vertices})

    def bbox(self) -> "Rect":
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return Rect(min(xs), max(xs), min(ys), max(ys))


class GeneralPolygon(BaseModel):
    """A simple polygon with exact rational coordinates, counterclockwise."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    vertices: Tuple[Tuple[Fraction, Fraction], ...]

    @property
    def n(self) -> int:
        return len(self.vertices)


class Rect(NamedTuple):
    l: int
    r: int
    b: int
    t: int


def rect_area(rect: Rect) -> int:
    return (rect.r - rect.l) * (rect.t - rect.b)


def rects_overlap(r1: Rect, r2: Rect) -> bool:
    return r1.l < r2.r and r2.l < r1.r and r1.b < r2.t and r2.b < r1.t


# ---------------------------------------------------------------------------
# exact predicates shared by both polygon kinds

def orient(a, b, c) -> int:
    """Sign of the cross product (b - a) x (c - a)."""
    value = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (value > 0) - (value < 0)


def _on_segment(a, b, p) -> bool:
    return (
        orient(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_intersect(a, b, c, d) -> bool:
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (
        _on_segment(a, b, c)
        or _on_segment(a, b, d)
        or _on_segment(c, d, a)
        or _on_segment(c, d, b)
    )


def twice_signed_area(points: Sequence) -> Number:
    total = 0
    count = len(points)
    for i in range(count):
        x1, y1 = points[i]
        x2, y2 = points[(i + 1) % count]
        total += x1 * y2 - x2 * y1
    return total


def _first_crossing(points: Sequence) -> Tuple[int, int] | None:
    """Indices of two edges that touch although they should not, or None."""
    count = len(points)
    for i in range(count):
        a, b = points[i], points[(i + 1) % count]
        for j in range(i + 1, count):
            c, d = points[j], points[(j + 1) % count]
            if j == i + 1 or (i == 0 and j == count - 1):
                # neighbours share exactly one vertex; anything more is an overlap
                far, near = (d, a) if j == i + 1 else (c, b)
                if _on_segment(a, b, far) or _on_segment(c, d, near):
                    return (i, j)
                continue
            if segments_intersect(a, b, c, d):
                return (i, j)
    return None


def _dedupe(points):
    out = []
    for p in points:
        if not out or out[-1] != p:
            out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def _check_repeats(points):
    seen = {}
    for i, p in enumerate(points):
        if p in seen:
            raise SelfIntersecting(
                f"vertex {p} repeats (positions {seen[p]} and {i})", index=i
            )
        seen[p] = i


def _merge_collinear(points):
    """Drop vertices in the middle of straight runs; reversing runs are spikes."""
    changed = True
    while changed and len(points) >= 3:
        changed = False
        count = len(points)
        for i in range(count):
            prev, cur, nxt = points[i - 1], points[i], points[(i + 1) % count]
            if orient(prev, cur, nxt) != 0:
                continue
            dot = (cur[0] - prev[0]) * (nxt[0] - cur[0]) + (cur[1] - prev[1]) * (nxt[1] - cur[1])
            if dot < 0:
                raise SelfIntersecting(f"edges fold back on themselves at {cur}", index=i)
            del points[i]
            changed = True
            break
    return points


def _integer(value, i):
    try:
        exact = Fraction(value)
    except (TypeError, ValueError, OverflowError):
        raise CoordinateOutOfRange(f"vertex coordinate {value!r} is not a number", index=i) from None
    if exact.denominator != 1:
        raise CoordinateOutOfRange(f"vertex coordinate {value!r} is not an integer", index=i)
    return exact.numerator


def validate_polygon(vertices: Iterable) -> OrthoPolygon:
    """Validate and normalize an orthogonal polygon.

    Accepts Point models or (x, y) pairs. Clockwise input is reversed,
    collinear runs are merged and a repeated closing vertex is dropped.
    """
    raw = [
        (v.x, v.y) if isinstance(v, Point) else (_integer(v[0], i), _integer(v[1], i))
        for i, v in enumerate(vertices)
    ]
    for i, (x, y) in enumerate(raw):
        if abs(x) > COORD_LIMIT or abs(y) > COORD_LIMIT:
            raise CoordinateOutOfRange(
                f"vertex ({x}, {y}) exceeds the coordinate bound 2^20", index=i
            )
    points = _dedupe(raw)
    if len(points) < 3:
        raise TooFewVertices(f"polygon needs at least 4 vertices, got {len(points)}")

    count = len(points)
    for i in range(count):
        (x1, y1), (x2, y2) = points[i], points[(i + 1) % count]
        if x1 != x2 and y1 != y2:
            raise NotClosedOrthogonal(
                f"edge ({x1}, {y1}) -> ({x2}, {y2}) is neither horizontal nor vertical", index=i
            )
    if count < 4:
        raise TooFewVertices(f"polygon needs at least 4 vertices, got {count}")
    _check_repeats(points)

    points = _merge_collinear(points)
    if len(points) < 4:
        raise DegenerateArea("all vertices are collinear")

    crossing = _first_crossing(points)
    if crossing is not None:
        i, j = crossing
        raise SelfIntersecting(f"edges {i} and {j} intersect", index=i)

    doubled = twice_signed_area(points)
    if doubled == 0:
        raise DegenerateArea("polygon encloses no area")
    if doubled < 0:
        points = [points[0]] + points[:0:-1]

    return OrthoPolygon(vertices=tuple(Point(x=x, y=y) for x, y in points))


def polygon_area(p: OrthoPolygon) -> int:
    return twice_signed_area(p.coords()) // 2


@lru_cache(maxsize=256)
def decompose_rectangles(p: OrthoPolygon) -> Tuple[Rect, ...]:
    """Cut p into interior-disjoint rectangles by horizontal rays.

    The sweep keeps the cross-section of p between consecutive vertex
    heights as disjoint x-intervals. At each height the intervals touched by
    a horizontal edge are closed into rectangles and the new cross-section
    over that span is opened; untouched intervals carry on.
    """
    coords = p.coords()
    count = len(coords)
    levels = {}
    for i in range(count):
        (x1, y1), (x2, y2) = coords[i], coords[(i + 1) % count]
        if y1 != y2:
            continue
        bottoms, tops = levels.setdefault(y1, ([], []))
        # counterclockwise: a rightward edge has the interior above it
        if x2 > x1:
            bottoms.append((x1, x2))
        else:
            tops.append((x2, x1))

    active = SortedDict()  # left x -> (right x, opening y)
    rects: List[Rect] = []
    for y in sorted(levels):
        bottoms, tops = levels[y]
        touched = {}
        for a, b in bottoms + tops:
            idx = active.bisect_right(b) - 1
            while idx >= 0:
                left, (right, start) = active.peekitem(idx)
                if right < a:
                    break
                touched[left] = (right, start)
                idx -= 1
        for left, (right, start) in touched.items():
            del active[left]
            rects.append(Rect(left, right, start, y))
        for a, b in _cross_section(
            [(left, right) for left, (right, _) in touched.items()], tops, bottoms
        ):
            active[a] = (b, y)

    if active:
        raise SelfIntersecting("horizontal sweep left open intervals behind")
    logger.debug("decomposed %d-gon into %d rectangles", count, len(rects))
    return tuple(rects)


def _cross_section(kept, removed, added) -> List[Tuple[int, int]]:
    """(kept minus removed) union added, as merged sorted intervals."""
    cuts = sorted({x for span in kept + removed + added for x in span})
    pieces = []
    for lo, hi in zip(cuts, cuts[1:]):
        covered = any(a <= lo and hi <= b for a, b in added) or (
            any(a <= lo and hi <= b for a, b in kept)
            and not any(a <= lo and hi <= b for a, b in removed)
        )
        if not covered:
            continue
        if pieces and pieces[-1][1] == lo:
            pieces[-1] = (pieces[-1][0], hi)
        else:
            pieces.append((lo, hi))
    return pieces


def locate_point(p: OrthoPolygon, pt) -> str:
    coords = p.coords()
    count = len(coords)
    x, y = pt
    crossings = 0
    for i in range(count):
        a, b = coords[i], coords[(i + 1) % count]
        if _on_segment(a, b, (x, y)):
            return "boundary"
        if a[0] == b[0] and a[0] > x and min(a[1], b[1]) <= y < max(a[1], b[1]):
            crossings += 1
    return "inside" if crossings % 2 else "outside"


def validate_general_polygon(vertices: Iterable, require_hvd: bool = False) -> GeneralPolygon:
    """Validate a rational polygon: closed, simple, positive area.

    With require_hvd every edge must be horizontal, vertical or of slope -1.
    """
    points = _dedupe([(Fraction(x), Fraction(y)) for x, y in vertices])
    if len(points) < 3:
        raise TooFewVertices(f"polygon needs at least 3 vertices, got {len(points)}")
    _check_repeats(points)
    points = _merge_collinear(points)
    if len(points) < 3:
        raise DegenerateArea("all vertices are collinear")

    if require_hvd:
        count = len(points)
        for i in range(count):
            (x1, y1), (x2, y2) = points[i], points[(i + 1) % count]
            dx, dy = x2 - x1, y2 - y1
            if dx != 0 and dy != 0 and dx != -dy:
                raise NotClosedOrthogonal(
                    f"edge {i} is not horizontal, vertical or anti-diagonal", index=i
                )

    crossing = _first_crossing(points)
    if crossing is not None:
        i, j = crossing
        raise NonSimpleInput(f"edges {i} and {j} intersect", index=i)

    doubled = twice_signed_area(points)
    if doubled == 0:
        raise DegenerateArea("polygon encloses no area")
    if doubled < 0:
        points = [points[0]] + points[:0:-1]
    return GeneralPolygon(vertices=tuple(points))


def general_polygon_area(g: GeneralPolygon) -> Fraction:
    return Fraction(twice_signed_area(g.vertices)) / 2


def to_general(p: OrthoPolygon) -> GeneralPolygon:
    return GeneralPolygon(vertices=tuple((Fraction(x), Fraction(y)) for x, y in p.coords()))
