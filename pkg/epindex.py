# epindex.py
import logging
import random
from collections import Counter
from fractions import Fraction
from math import ceil, gcd
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from config import get_settings
from errors import EmptyInput
from hull3d import FlatPointSet, convex_hull_3d
from trapmap import Segment, TrapezoidalMap, hpoint, hpoint_from

logger = logging.getLogger(__name__)

# point location window for directions (d1, d2); rays are clipped to it
MIN_WINDOW = 2 ** 130


class LiftedPoint(NamedTuple):
    u: int
    v: int
    w: int
    tag: int


def _value(p: LiftedPoint, d1: int, d2: int, d3: int = 1) -> int:
    return d1 * p.u + d2 * p.v + d3 * p.w


def _better(value: int, tag: int, best_value: Optional[int], best_tag: int) -> bool:
    return best_value is None or value > best_value or (value == best_value and tag < best_tag)


def scan_extreme(points: Sequence[LiftedPoint], d: Tuple[int, int, int]) -> Tuple[LiftedPoint, int]:
    """Exact linear-scan maximizer of <p, d>; smallest tag wins ties."""
    if not points:
        raise EmptyInput("no points to scan")
    d1, d2, d3 = d
    best, best_value = None, None
    for p in points:
        value = _value(p, d1, d2, d3)
        if best is None or _better(value, p.tag, best_value, best.tag):
            best, best_value = p, value
    return best, best_value


def _primitive(dx: int, dy: int) -> Tuple[int, int]:
    g = gcd(dx, dy)
    return dx // g, dy // g


def _cross2(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _convex_hull_2d(points: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
    """Andrew's monotone chain; counterclockwise, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: List[Tuple[int, int]] = []
    for p in pts:
        while len(lower) >= 2 and _cross2(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Tuple[int, int]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross2(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


class EPIndex:
    """Extreme-point queries for directions (d1, d2, 1).

    Points sharing (u, v) collapse to the highest w. Depending on how the
    remaining projections sit, queries are answered by a single point, by
    binary search on a 2D upper hull, or by point location in the
    projected normal diagram of the upper hull.
    """

    def __init__(
        self,
        points: Sequence[LiftedPoint],
        seed: int = 0,
        scan_threshold: Optional[int] = None,
        counters: Optional[Counter] = None,
    ):
        if not points:
            raise EmptyInput("extreme-point index needs at least one point")
        self.counters = counters if counters is not None else Counter()
        self.counters["hull_builds"] += 1
        self.counters["hull_points"] += len(points)
        if scan_threshold is None:
            scan_threshold = get_settings().ep_scan_threshold

        best: Dict[Tuple[int, int], LiftedPoint] = {}
        for p in points:
            kept = best.get((p.u, p.v))
            if kept is None or p.w > kept.w or (p.w == kept.w and p.tag < kept.tag):
                best[(p.u, p.v)] = p
        self.points: List[LiftedPoint] = sorted(best.values(), key=lambda p: (p.u, p.v))
        self.by_tag = {p.tag: p for p in self.points}
        self.window = MIN_WINDOW
        self.map: Optional[TrapezoidalMap] = None

        if len(self.points) == 1:
            self.mode = "single"
        elif len(self.points) <= scan_threshold:
            self.mode = "scan"
        elif self._projections_collinear():
            self.mode = "line"
            self._build_line()
        else:
            self.mode = "map"
            self._build_map(random.Random(seed))
        logger.debug("extreme-point index over %d points in %s mode", len(self.points), self.mode)

    # -- degenerate layouts -------------------------------------------------

    def _projections_collinear(self) -> bool:
        o = (self.points[0].u, self.points[0].v)
        a = (self.points[-1].u, self.points[-1].v)
        return all(_cross2(o, a, (p.u, p.v)) == 0 for p in self.points)

    def _build_line(self) -> None:
        first, last = self.points[0], self.points[-1]
        gx, gy = _primitive(last.u - first.u, last.v - first.v)
        self.origin = (first.u, first.v)
        self.step = (gx, gy)

        def offset(p: LiftedPoint) -> int:
            return (p.u - first.u) // gx if gx else (p.v - first.v) // gy

        chain: List[Tuple[int, LiftedPoint]] = []
        for p in sorted(self.points, key=offset):
            t = offset(p)
            while len(chain) >= 2:
                (t1, p1), (t2, p2) = chain[-2], chain[-1]
                # drop the middle point unless it lies strictly above the chord
                if (p2.w - p1.w) * (t - t1) <= (p.w - p1.w) * (t2 - t1):
                    chain.pop()
                else:
                    break
            chain.append((t, p))
        self.chain = chain

    def _query_line(self, d1: int, d2: int) -> Tuple[LiftedPoint, int]:
        s = d1 * self.step[0] + d2 * self.step[1]
        chain = self.chain
        lo, hi = 0, len(chain) - 1
        # first k whose successor does not improve the value
        while lo < hi:
            mid = (lo + hi) // 2
            (t1, p1), (t2, p2) = chain[mid], chain[mid + 1]
            self.counters["ep_steps"] += 1
            if (p2.w - p1.w) + s * (t2 - t1) > 0:
                lo = mid + 1
            else:
                hi = mid
        candidates = [chain[lo][1]]
        if lo + 1 < len(chain):
            candidates.append(chain[lo + 1][1])
        return scan_extreme(candidates, (d1, d2, 1))

    # -- general position ---------------------------------------------------

    def _build_map(self, rng: random.Random) -> None:
        coords = [(p.u, p.v, p.w) for p in self.points]
        try:
            facets = convex_hull_3d(coords, rng, self.counters)
        except FlatPointSet:
            segments, duals = self._plane_fan()
        else:
            segments, duals = self._hull_diagram(facets)

        biggest = max((abs(c) for dual in duals for c in dual), default=0)
        self.window = max(MIN_WINDOW, 2 * ceil(biggest) + 2)
        clipped = [self._clip(seg) for seg in segments]
        merged: Dict[Tuple, set] = {}
        for a, b, labels in clipped:
            key = (a, b) if a <= b else (b, a)
            merged.setdefault(key, set()).update(labels)
        final = [Segment(a, b, labels) for (a, b), labels in merged.items()]
        self.map = TrapezoidalMap(final, 2 * self.window, rng, self.counters)
        self.counters["map_segments"] += len(final)

    def _plane_fan(self):
        """Rays of the normal fan when every point lies on one plane."""
        pts = self.points
        a = pts[0]
        b = pts[-1]
        c = next(p for p in pts if _cross2((a.u, a.v), (b.u, b.v), (p.u, p.v)) != 0)
        nx = (b.v - a.v) * (c.w - a.w) - (b.w - a.w) * (c.v - a.v)
        ny = (b.w - a.w) * (c.u - a.u) - (b.u - a.u) * (c.w - a.w)
        nz = (b.u - a.u) * (c.v - a.v) - (b.v - a.v) * (c.u - a.u)
        if nz < 0:
            nx, ny, nz = -nx, -ny, -nz
        dual = hpoint(nx, ny, nz)

        tag_at = {(p.u, p.v): p.tag for p in pts}
        ring = _convex_hull_2d(list(tag_at))
        rays = []
        for i, (x1, y1) in enumerate(ring):
            x2, y2 = ring[(i + 1) % len(ring)]
            direction = _primitive(y2 - y1, -(x2 - x1))
            rays.append(("ray", dual, direction, (tag_at[(x1, y1)], tag_at[(x2, y2)])))
        return rays, [(Fraction(dual[0], dual[2]), Fraction(dual[1], dual[2]))]

    def _hull_diagram(self, facets):
        """Segments and rays of the upper hull's normal diagram."""
        tags = [p.tag for p in self.points]
        number = {id(f): i for i, f in enumerate(facets)}
        duals = {}
        for f in facets:
            nx, ny, nz = f.normal
            if nz > 0:
                duals[id(f)] = hpoint(nx, ny, nz)

        pieces = []
        for f in facets:
            if id(f) not in duals:
                continue
            for e in range(3):
                g = f.neighbors[e]
                u, v = f.edge(e)
                labels = (tags[u], tags[v])
                if id(g) in duals:
                    if number[id(f)] < number[id(g)] and duals[id(f)] != duals[id(g)]:
                        pieces.append(("segment", duals[id(f)], duals[id(g)], labels))
                else:
                    fx, fy, fz = f.normal
                    gx, gy, gz = g.normal
                    direction = _primitive(fz * gx - gz * fx, fz * gy - gz * fy)
                    pieces.append(("ray", duals[id(f)], direction, labels))
        points = [(Fraction(d[0], d[2]), Fraction(d[1], d[2])) for d in duals.values()]
        return pieces, points

    def _clip(self, piece):
        kind, start, other, labels = piece
        if kind == "segment":
            return start, other, labels
        ox, oy = Fraction(start[0], start[2]), Fraction(start[1], start[2])
        dx, dy = other
        limit = self.window
        exits = []
        if dx:
            exits.append(((limit if dx > 0 else -limit) - ox) / dx)
        if dy:
            exits.append(((limit if dy > 0 else -limit) - oy) / dy)
        t = min(exits)
        return start, hpoint_from(ox + t * dx, oy + t * dy), labels

    # -- queries ------------------------------------------------------------

    def query(self, d1: int, d2: int, d3: int = 1) -> Tuple[LiftedPoint, int]:
        self.counters["ep_queries"] += 1
        if self.mode == "single":
            p = self.points[0]
            return p, _value(p, d1, d2, d3)
        if d3 != 1 or self.mode == "scan" or abs(d1) >= self.window or abs(d2) >= self.window:
            self.counters["ep_scans"] += len(self.points)
            return scan_extreme(self.points, (d1, d2, d3))
        if self.mode == "line":
            return self._query_line(d1, d2)
        labels = self.map.candidates(hpoint(d1, d2, 1))
        if not labels:
            logger.warning("point location returned no candidates at (%d, %d)", d1, d2)
            self.counters["ep_scans"] += len(self.points)
            return scan_extreme(self.points, (d1, d2, d3))
        return scan_extreme([self.by_tag[tag] for tag in labels], (d1, d2, 1))


def ep_build(
    points: Sequence[LiftedPoint],
    seed: int = 0,
    scan_threshold: Optional[int] = None,
    counters: Optional[Counter] = None,
) -> EPIndex:
    return EPIndex(points, seed=seed, scan_threshold=scan_threshold, counters=counters)


def ep_query(index: EPIndex, d: Tuple[int, ...]) -> Tuple[LiftedPoint, int]:
    if len(d) == 2:
        return index.query(d[0], d[1])
    return index.query(d[0], d[1], d[2])
