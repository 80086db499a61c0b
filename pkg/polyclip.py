# polyclip.py
import logging
from fractions import Fraction
from typing import List, Sequence, Tuple

from core import orient, twice_signed_area
from errors import NonSimpleInput

logger = logging.getLogger(__name__)

Triangle = Tuple[Tuple, Tuple, Tuple]


def _inside_closed(a, b, c, p) -> bool:
    return orient(a, b, p) >= 0 and orient(b, c, p) >= 0 and orient(c, a, p) >= 0


def triangulate(vertices: Sequence[Tuple]) -> List[Triangle]:
    """Ear clipping of a simple counterclockwise polygon, exact.

    An ear is a convex corner whose triangle holds no other remaining vertex,
    boundary included. Straight corners are dropped without a triangle.
    """
    ring = list(vertices)
    triangles: List[Triangle] = []
    while len(ring) > 3:
        count = len(ring)
        for i in range(count):
            a, b, c = ring[i - 1], ring[i], ring[(i + 1) % count]
            turn = orient(a, b, c)
            if turn == 0:
                del ring[i]
                break
            if turn < 0:
                continue
            if any(_inside_closed(a, b, c, p) for p in ring if p not in (a, b, c)):
                continue
            triangles.append((a, b, c))
            del ring[i]
            break
        else:
            raise NonSimpleInput("no ear found; polygon is not simple or not counterclockwise")
    if len(ring) == 3 and orient(*ring) > 0:
        triangles.append(tuple(ring))
    return triangles


def _cut(polygon: List[Tuple], a, b) -> List[Tuple]:
    """Keep the part of a convex polygon on the left of the line a -> b."""
    kept: List[Tuple] = []
    count = len(polygon)
    for i in range(count):
        p, q = polygon[i], polygon[(i + 1) % count]
        op, oq = orient(a, b, p), orient(a, b, q)
        if op >= 0:
            kept.append(p)
        if op * oq < 0:
            dx, dy = q[0] - p[0], q[1] - p[1]
            ex, ey = b[0] - a[0], b[1] - a[1]
            t = Fraction(ex * (p[1] - a[1]) - ey * (p[0] - a[0]), ey * dx - ex * dy)
            kept.append((p[0] + t * dx, p[1] + t * dy))
    return kept


def clip_convex(subject: Sequence[Tuple], clip: Sequence[Tuple]) -> List[Tuple]:
    """Sutherland-Hodgman clip of a convex polygon by a counterclockwise convex one."""
    polygon = list(subject)
    count = len(clip)
    for i in range(count):
        if len(polygon) < 3:
            return []
        polygon = _cut(polygon, clip[i], clip[(i + 1) % count])
    return polygon if len(polygon) >= 3 else []


def convex_overlap_area(first: Sequence[Tuple], second: Sequence[Tuple]) -> Fraction:
    piece = clip_convex(first, second)
    if not piece:
        return Fraction(0)
    return Fraction(twice_signed_area(piece)) / 2
