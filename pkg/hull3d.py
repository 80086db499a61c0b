# hull3d.py
import logging
import random
from collections import Counter
from typing import Dict, List, Optional, Sequence, Set, Tuple

logger = logging.getLogger(__name__)

Vec3 = Tuple[int, int, int]


class FlatPointSet(ValueError):
    """Raised when the points do not span three dimensions."""


def cross(a: Vec3, b: Vec3) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def sub(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def dot(a: Vec3, b: Vec3) -> int:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def orient3d(a: Vec3, b: Vec3, c: Vec3, d: Vec3) -> int:
    """Sign of det[b - a, c - a, d - a]; positive when d lies above plane abc."""
    value = dot(cross(sub(b, a), sub(c, a)), sub(d, a))
    return (value > 0) - (value < 0)


class Facet:
    """Triangle of the hull, counterclockwise seen from outside.

    neighbors[e] is the facet across the edge vertices[e] -> vertices[e + 1].
    """

    __slots__ = ("vertices", "neighbors", "normal", "offset", "conflicts", "alive")

    def __init__(self, i: int, j: int, k: int, points: Sequence[Vec3]):
        self.vertices = (i, j, k)
        self.neighbors: List[Optional["Facet"]] = [None, None, None]
        a, b, c = points[i], points[j], points[k]
        self.normal = cross(sub(b, a), sub(c, a))
        self.offset = dot(self.normal, a)
        self.conflicts: Set[int] = set()
        self.alive = True

    def sees(self, point: Vec3) -> bool:
        return dot(self.normal, point) > self.offset

    def edge(self, e: int) -> Tuple[int, int]:
        return self.vertices[e], self.vertices[(e + 1) % 3]


def _link(facets: List[Facet]) -> None:
    owner: Dict[Tuple[int, int], Tuple[Facet, int]] = {}
    for f in facets:
        for e in range(3):
            owner[f.edge(e)] = (f, e)
    for f in facets:
        for e in range(3):
            u, v = f.edge(e)
            f.neighbors[e] = owner[(v, u)][0]


def _initial_simplex(points: Sequence[Vec3], order: List[int]) -> Tuple[int, int, int, int]:
    i0 = order[0]
    p0 = points[i0]
    i1 = next((i for i in order if points[i] != p0), None)
    if i1 is None:
        raise FlatPointSet("all points coincide")
    p1 = points[i1]
    i2 = next((i for i in order if cross(sub(p1, p0), sub(points[i], p0)) != (0, 0, 0)), None)
    if i2 is None:
        raise FlatPointSet("all points are collinear")
    p2 = points[i2]
    i3 = next((i for i in order if orient3d(p0, p1, p2, points[i]) != 0), None)
    if i3 is None:
        raise FlatPointSet("all points are coplanar")
    if orient3d(p0, p1, p2, points[i3]) > 0:
        i1, i2 = i2, i1
    return i0, i1, i2, i3


def convex_hull_3d(
    points: Sequence[Vec3],
    rng: Optional[random.Random] = None,
    counters: Optional[Counter] = None,
) -> List[Facet]:
    """Randomized incremental convex hull with a conflict graph.

    All predicates are exact integer tests. A point is inserted only when it
    is strictly outside, so coplanar neighbours may remain as separate facets.
    """
    rng = rng or random.Random(0)
    counters = counters if counters is not None else Counter()
    order = list(range(len(points)))
    rng.shuffle(order)

    a, b, c, d = _initial_simplex(points, order)
    facets = [
        Facet(a, b, c, points),
        Facet(a, d, b, points),
        Facet(b, d, c, points),
        Facet(c, d, a, points),
    ]
    _link(facets)

    seeds = {a, b, c, d}
    point_conflicts: Dict[int, Set[Facet]] = {}
    for idx in order:
        if idx in seeds:
            continue
        seen = {f for f in facets if f.sees(points[idx])}
        for f in seen:
            f.conflicts.add(idx)
        point_conflicts[idx] = seen

    for idx in order:
        if idx in seeds:
            continue
        visible = [f for f in point_conflicts.pop(idx, ()) if f.alive]
        if not visible:
            continue
        counters["hull_insertions"] += 1
        visible_set = set(visible)

        # horizon edges keyed by their start vertex
        horizon: Dict[int, Tuple[int, Facet, Facet]] = {}
        for f in visible:
            for e in range(3):
                g = f.neighbors[e]
                if g not in visible_set:
                    u, v = f.edge(e)
                    horizon[u] = (v, f, g)

        start = next(iter(horizon))
        ring = []
        u = start
        while True:
            v, f, g = horizon[u]
            ring.append((u, v, f, g))
            u = v
            if u == start:
                break

        created: List[Facet] = []
        for u, v, f, g in ring:
            h = Facet(u, v, idx, points)
            h.neighbors[0] = g
            g.neighbors[g.neighbors.index(f)] = h
            for q in (f.conflicts | g.conflicts):
                if q != idx and h.sees(points[q]):
                    h.conflicts.add(q)
            created.append(h)
        count = len(created)
        for k, h in enumerate(created):
            h.neighbors[1] = created[(k + 1) % count]
            h.neighbors[2] = created[k - 1]

        for f in visible:
            f.alive = False
            for q in f.conflicts:
                if q in point_conflicts:
                    point_conflicts[q].discard(f)
        for h in created:
            for q in h.conflicts:
                point_conflicts[q].add(h)
        counters["hull_facets_created"] += count
        facets.extend(created)

    alive = [f for f in facets if f.alive]
    logger.debug("hull of %d points has %d facets", len(points), len(alive))
    return alive
