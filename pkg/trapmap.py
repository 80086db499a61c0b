# trapmap.py
"""Randomized incremental trapezoidal map over non-crossing segments.

Points are homogeneous integer triples (X, Y, W) with W > 0 standing for
(X / W, Y / W), reduced by their gcd so equal points compare equal. Ties in
x are broken lexicographically by y, which acts as a symbolic shear: no two
distinct endpoints ever share an x-coordinate.
"""
import logging
import random
from collections import Counter
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Set, Tuple

logger = logging.getLogger(__name__)

HPoint = Tuple[int, int, int]

XNODE, YNODE, LEAF = "x", "y", "leaf"


def hpoint(X: int, Y: int, W: int) -> HPoint:
    if W < 0:
        X, Y, W = -X, -Y, -W
    g = gcd(gcd(X, Y), W)
    return (X // g, Y // g, W // g)


def hpoint_from(x, y) -> HPoint:
    x, y = Fraction(x), Fraction(y)
    W = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
    return hpoint(x.numerator * (W // x.denominator), y.numerator * (W // y.denominator), W)


def lexcmp(p: HPoint, q: HPoint) -> int:
    lhs, rhs = p[0] * q[2], q[0] * p[2]
    if lhs == rhs:
        lhs, rhs = p[1] * q[2], q[1] * p[2]
    return (lhs > rhs) - (lhs < rhs)


def horient(p: HPoint, q: HPoint, r: HPoint) -> int:
    """Orientation of three homogeneous points; W > 0 keeps the Euclidean sign."""
    value = (
        p[0] * (q[1] * r[2] - q[2] * r[1])
        - p[1] * (q[0] * r[2] - q[2] * r[0])
        + p[2] * (q[0] * r[1] - q[1] * r[0])
    )
    return (value > 0) - (value < 0)


class Segment:
    __slots__ = ("p", "q", "labels")

    def __init__(self, a: HPoint, b: HPoint, labels: Iterable[int] = ()):
        if lexcmp(a, b) > 0:
            a, b = b, a
        self.p = a
        self.q = b
        self.labels = tuple(sorted(set(labels)))


class Trapezoid:
    __slots__ = ("top", "bottom", "leftp", "rightp", "ul", "ll", "ur", "lr", "node")

    def __init__(self, top: Segment, bottom: Segment, leftp: HPoint, rightp: Optional[HPoint]):
        self.top = top
        self.bottom = bottom
        self.leftp = leftp
        self.rightp = rightp
        # neighbours sharing the top (u*) or bottom (l*) segment
        self.ul: Optional[Trapezoid] = None
        self.ll: Optional[Trapezoid] = None
        self.ur: Optional[Trapezoid] = None
        self.lr: Optional[Trapezoid] = None
        self.node = Node(LEAF, trap=self)


class Node:
    __slots__ = ("kind", "point", "segment", "left", "right", "trap")

    def __init__(self, kind, point=None, segment=None, left=None, right=None, trap=None):
        self.kind = kind
        self.point = point
        self.segment = segment
        self.left = left
        self.right = right
        self.trap = trap

    def become(self, other: "Node") -> None:
        self.kind = other.kind
        self.point = other.point
        self.segment = other.segment
        self.left = other.left
        self.right = other.right
        self.trap = None


def _retarget_right(trap: Optional[Trapezoid], old: Trapezoid, new: Trapezoid) -> None:
    if trap is None:
        return
    if trap.ur is old:
        trap.ur = new
    if trap.lr is old:
        trap.lr = new


def _retarget_left(trap: Optional[Trapezoid], old: Trapezoid, new: Trapezoid) -> None:
    if trap is None:
        return
    if trap.ul is old:
        trap.ul = new
    if trap.ll is old:
        trap.ll = new


class TrapezoidalMap:
    """Point location over a planar subdivision given by labelled segments.

    Every segment must lie strictly inside the square (-bound, bound)^2 and
    segments may meet only at shared endpoints.
    """

    def __init__(
        self,
        segments: List[Segment],
        bound: int,
        rng: Optional[random.Random] = None,
        counters: Optional[Counter] = None,
    ):
        self.counters = counters if counters is not None else Counter()
        self.bound = bound
        top = Segment(hpoint(-bound, bound, 1), hpoint(bound, bound, 1))
        bottom = Segment(hpoint(-bound, -bound, 1), hpoint(bound, -bound, 1))
        first = Trapezoid(top, bottom, hpoint(-bound, -bound, 1), hpoint(bound, bound, 1))
        self.root = first.node
        self.box = {id(top), id(bottom)}

        self.endpoint_labels: Dict[HPoint, Set[int]] = {}
        for seg in segments:
            self.endpoint_labels.setdefault(seg.p, set()).update(seg.labels)
            self.endpoint_labels.setdefault(seg.q, set()).update(seg.labels)

        order = list(segments)
        (rng or random.Random(0)).shuffle(order)
        for seg in order:
            self._insert(seg)
        self.segment_count = len(order)
        logger.debug("trapezoidal map over %d segments", len(order))

    # -- location -----------------------------------------------------------

    def _locate_left_end(self, seg: Segment) -> Trapezoid:
        node = self.root
        while node.kind != LEAF:
            if node.kind == XNODE:
                node = node.left if lexcmp(seg.p, node.point) < 0 else node.right
            else:
                s = node.segment
                probe = seg.q if seg.p == s.p else seg.p
                node = node.left if horient(s.p, s.q, probe) > 0 else node.right
        return node.trap

    def locate(self, pt: HPoint) -> Trapezoid:
        node = self.root
        steps = 0
        while node.kind != LEAF:
            steps += 1
            if node.kind == XNODE:
                node = node.left if lexcmp(pt, node.point) < 0 else node.right
            else:
                s = node.segment
                node = node.left if horient(s.p, s.q, pt) > 0 else node.right
        self.counters["ep_steps"] += steps
        return node.trap

    def candidates(self, pt: HPoint) -> Set[int]:
        """Labels of the faces whose closure may contain pt."""
        trap = self.locate(pt)
        labels: Set[int] = set()
        for seg in (trap.bottom, trap.top):
            if id(seg) not in self.box:
                labels.update(seg.labels)
        if not labels:
            labels.update(self.endpoint_labels.get(trap.leftp, ()))
            labels.update(self.endpoint_labels.get(trap.rightp, ()))
        return labels

    # -- construction -------------------------------------------------------

    def _insert(self, seg: Segment) -> None:
        p, q = seg.p, seg.q
        crossed = [self._locate_left_end(seg)]
        while lexcmp(q, crossed[-1].rightp) > 0:
            t = crossed[-1]
            crossed.append(t.lr if horient(p, q, t.rightp) > 0 else t.ur)

        first, last = crossed[0], crossed[-1]
        upper = Trapezoid(first.top, seg, p, None)
        lower = Trapezoid(seg, first.bottom, p, None)
        upper_of = [upper]
        lower_of = [lower]
        for prev, cur in zip(crossed, crossed[1:]):
            wall = prev.rightp
            if horient(p, q, wall) > 0:
                # wall point above seg: upper parts split, lower part runs on
                upper.rightp = wall
                fresh = Trapezoid(cur.top, seg, wall, None)
                upper.lr, fresh.ll = fresh, upper
                upper.ur = prev.ur
                _retarget_left(prev.ur, prev, upper)
                fresh.ul = cur.ul
                _retarget_right(cur.ul, cur, fresh)
                upper = fresh
            else:
                lower.rightp = wall
                fresh = Trapezoid(seg, cur.bottom, wall, None)
                lower.ur, fresh.ul = fresh, lower
                lower.lr = prev.lr
                _retarget_left(prev.lr, prev, lower)
                fresh.ll = cur.ll
                _retarget_right(cur.ll, cur, fresh)
                lower = fresh
            upper_of.append(upper)
            lower_of.append(lower)
        upper.rightp = q
        lower.rightp = q

        left_piece = None
        if lexcmp(p, first.leftp) > 0:
            left_piece = Trapezoid(first.top, first.bottom, first.leftp, p)
            left_piece.ul, left_piece.ll = first.ul, first.ll
            _retarget_right(first.ul, first, left_piece)
            _retarget_right(first.ll, first, left_piece)
            left_piece.ur, left_piece.lr = upper_of[0], lower_of[0]
            upper_of[0].ul = left_piece
            lower_of[0].ll = left_piece
        else:
            upper_of[0].ul = first.ul
            if first.ul is not None:
                first.ul.ur = upper_of[0]
            lower_of[0].ll = first.ll
            if first.ll is not None:
                first.ll.lr = lower_of[0]

        right_piece = None
        if lexcmp(q, last.rightp) < 0:
            right_piece = Trapezoid(last.top, last.bottom, q, last.rightp)
            right_piece.ur, right_piece.lr = last.ur, last.lr
            _retarget_left(last.ur, last, right_piece)
            _retarget_left(last.lr, last, right_piece)
            right_piece.ul, right_piece.ll = upper, lower
            upper.ur = right_piece
            lower.lr = right_piece
        else:
            upper.ur = last.ur
            if last.ur is not None:
                last.ur.ul = upper
            lower.lr = last.lr
            if last.lr is not None:
                last.lr.ll = lower

        final = len(crossed) - 1
        for i, old in enumerate(crossed):
            sub = Node(YNODE, segment=seg, left=upper_of[i].node, right=lower_of[i].node)
            if i == final and right_piece is not None:
                sub = Node(XNODE, point=q, left=sub, right=right_piece.node)
            if i == 0 and left_piece is not None:
                sub = Node(XNODE, point=p, left=left_piece.node, right=sub)
            old.node.become(sub)
        self.counters["map_trapezoids"] += len(crossed)
