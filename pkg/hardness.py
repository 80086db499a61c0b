# hardness.py
"""Generators and desk-scale certifiers for the (3,2)-SUM -> maximum overlap
and 3-SUM -> containment constructions.

All coordinates are exact rationals. Both polygons are also kept as lists of
convex, interior-disjoint gadget pieces whose union is the polygon; the
pieces drive the fast sampled checks while general_area_at triangulates the
polygons themselves.
"""
import itertools
import logging
import random
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Dict, Iterator, List, Literal, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from config import get_settings
from core import GeneralPolygon, general_polygon_area, validate_general_polygon
from errors import GenerationFailed, InstanceTooLarge
from polyclip import convex_overlap_area, triangulate

logger = logging.getLogger(__name__)

Tau = Tuple[Fraction, Fraction]


def _normalize_set(values) -> Tuple[int, ...]:
    values = tuple(sorted(set(int(v) for v in values)))
    if not values:
        raise ValueError("sets must not be empty")
    if values[0] < 1:
        raise ValueError("set elements must be positive integers")
    return values


class SumInstance(BaseModel):
    """(3,2)-SUM input: is there a = b + c + d + e over A x B x C x D x E?"""

    model_config = ConfigDict(frozen=True)

    A: Tuple[int, ...]
    B: Tuple[int, ...]
    C: Tuple[int, ...]
    D: Tuple[int, ...]
    E: Tuple[int, ...]

    @field_validator("A", "B", "C", "D", "E", mode="before")
    @classmethod
    def _sorted_positive(cls, values):
        return _normalize_set(values)

    @model_validator(mode="after")
    def _sizes(self):
        if not len(self.A) == len(self.B) == len(self.C):
            raise ValueError("A, B and C must have the same size n")
        if len(self.D) != len(self.E):
            raise ValueError("D and E must have the same size m")
        if len(self.D) > len(self.A):
            raise ValueError("m must not exceed n")
        return self

    @property
    def n(self) -> int:
        return len(self.A)

    @property
    def m(self) -> int:
        return len(self.D)

    @classmethod
    def from_three_sum(cls, A, B, C) -> "SumInstance":
        """a = b + c holds exactly when (a + 2) = b + c + 1 + 1."""
        return cls(A=[a + 2 for a in A], B=B, C=C, D=[1], E=[1])


class ThreeSumInstance(BaseModel):
    model_config = ConfigDict(frozen=True)

    A: Tuple[int, ...]
    B: Tuple[int, ...]
    C: Tuple[int, ...]

    @field_validator("A", "B", "C", mode="before")
    @classmethod
    def _sorted_positive(cls, values):
        return _normalize_set(values)

    @model_validator(mode="after")
    def _sizes(self):
        if not len(self.A) == len(self.B) == len(self.C):
            raise ValueError("A, B and C must have the same size n")
        return self

    @property
    def n(self) -> int:
        return len(self.A)


class ReductionParams(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    M: int
    eps: Fraction
    connector_width: Fraction
    connector_area: Fraction


class Gadget(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    kind: str
    polygon: GeneralPolygon


class ReductionInstance(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    variant: Literal["overlap", "containment"]
    P: GeneralPolygon
    Q: GeneralPolygon
    threshold: Fraction
    params: ReductionParams
    source: Union[SumInstance, ThreeSumInstance]
    gadgets_p: Tuple[Gadget, ...]
    gadgets_q: Tuple[Gadget, ...]

    def area_at(self, tau) -> Fraction:
        """Exact overlap area summed over pairs of convex gadget pieces."""
        tx, ty = Fraction(tau[0]), Fraction(tau[1])
        total = Fraction(0)
        for gq in self.gadgets_q:
            moved = [(x + tx, y + ty) for x, y in gq.polygon.vertices]
            qbox = _bbox(moved)
            for gp in self.gadgets_p:
                if _boxes_meet(qbox, _bbox(gp.polygon.vertices)):
                    total += convex_overlap_area(moved, gp.polygon.vertices)
        return total


class CertificationReport(BaseModel):
    variant: str
    satisfiable: bool
    witness: Optional[Tuple[int, ...]] = None
    integrality: str = "n/a"
    forward: str = "n/a"
    forward_area: Optional[str] = None
    sweep: str = "fail"
    sweep_verdict: bool = False
    sweep_max: str = "0"
    candidates: int = 0
    sampling: str = "n/a"
    sampling_max: Optional[str] = None
    samples: int = 0
    isolation: str = "n/a"
    anchor: str = "n/a"
    anchor_max: Optional[str] = None
    # 1 plus the summed connector area; anchor_max is checked against this
    anchor_bound: Optional[str] = None
    consistency: str = "n/a"
    q_vertices: int = 0
    passed: bool = False


# ---------------------------------------------------------------------------
# k-SUM oracles and instance sources

def solve_32sum_brute(inst: SumInstance, limit: Optional[int] = None) -> Optional[Tuple[int, int, int, int, int]]:
    limit = limit if limit is not None else get_settings().sum_brute_limit
    work = inst.n ** 3 * inst.m ** 2
    if work > limit:
        raise InstanceTooLarge(f"{work} tuples exceed the (3,2)-SUM brute-force limit {limit}")
    for a, b, c, d, e in itertools.product(inst.A, inst.B, inst.C, inst.D, inst.E):
        if a == b + c + d + e:
            return (a, b, c, d, e)
    return None


def solve_32sum_hashjoin(inst: SumInstance) -> Optional[Tuple[int, int, int, int, int]]:
    """Meet-in-the-middle oracle: index d + e, probe with a - b - c."""
    pairs: Dict[int, Tuple[int, int]] = {}
    for d, e in itertools.product(inst.D, inst.E):
        pairs.setdefault(d + e, (d, e))
    for a, b, c in itertools.product(inst.A, inst.B, inst.C):
        hit = pairs.get(a - b - c)
        if hit is not None:
            return (a, b, c) + hit
    return None


def solve_3sum_brute(inst: ThreeSumInstance) -> Optional[Tuple[int, int, int]]:
    for a, b, c in itertools.product(inst.A, inst.B, inst.C):
        if a == b + c:
            return (a, b, c)
    return None


def _planted_target(parts: Sequence[Sequence[int]], a_max: int, rng: random.Random) -> int:
    for _ in range(20):
        target = sum(rng.choice(part) for part in parts)
        if target <= a_max:
            return target
    target = sum(min(part) for part in parts)
    if target > a_max:
        raise GenerationFailed(f"no planted sum fits under a_max={a_max}")
    return target


def random_sum_instance(
    n: int, m: int, max_value: int, seed: int, planted: bool = False, a_max: Optional[int] = None
) -> SumInstance:
    """B, C, D, E from 1..max_value and A from 1..a_max (4 * max_value by default)."""
    a_max = 4 * max_value if a_max is None else a_max
    rng = random.Random(seed)
    pool = range(1, max_value + 1)
    B = rng.sample(pool, n)
    C = rng.sample(pool, n)
    D = rng.sample(pool, m)
    E = rng.sample(pool, m)
    A = rng.sample(range(1, a_max + 1), n)
    if planted:
        target = _planted_target([B, C, D, E], a_max, rng)
        if target not in A:
            A[0] = target
    return SumInstance(A=A, B=B, C=C, D=D, E=E)


def random_three_sum_instance(n: int, max_value: int, seed: int, planted: bool = False) -> ThreeSumInstance:
    rng = random.Random(seed)
    pool = range(1, max_value + 1)
    B = rng.sample(pool, n)
    C = rng.sample(pool, n)
    A = rng.sample(range(1, 2 * max_value + 1), n)
    if planted:
        target = _planted_target([B, C], 2 * max_value, rng)
        if target not in A:
            A[0] = target
    return ThreeSumInstance(A=A, B=B, C=C)


def enumerate_sum_instances(n: int, m: int, max_value: int) -> Iterator[SumInstance]:
    """Every instance over 1..max_value, up to swapping B with C and D with E."""
    n_sets = list(itertools.combinations(range(1, max_value + 1), n))
    m_sets = list(itertools.combinations(range(1, max_value + 1), m))
    if m > n:
        return
    for B, C in itertools.combinations_with_replacement(n_sets, 2):
        for D, E in itertools.combinations_with_replacement(m_sets, 2):
            for A in n_sets:
                yield SumInstance(A=A, B=B, C=C, D=D, E=E)


# ---------------------------------------------------------------------------
# geometry helpers

def _rect(l, r, b, t) -> List[Tau]:
    return [(l, b), (r, b), (r, t), (l, t)]


def _bbox(vertices) -> Tuple:
    xs = [v[0] for v in vertices]
    ys = [v[1] for v in vertices]
    return (min(xs), min(ys), max(xs), max(ys))


def _boxes_meet(a, b) -> bool:
    return a[0] < b[2] and b[0] < a[2] and a[1] < b[3] and b[1] < a[3]


def _gadget(name: str, kind: str, vertices) -> Gadget:
    return Gadget(name=name, kind=kind, polygon=validate_general_polygon(vertices, require_hvd=True))


def _params(total: int, n: int) -> Tuple[int, Fraction, Fraction]:
    M = 100 * total
    eps = Fraction(1, 100 * n * n)
    width = eps * eps / (4000 * M)
    return M, eps, width


def _connector_budget(polygon: GeneralPolygon, gadgets: Sequence[Gadget]) -> Fraction:
    pieces = sum(general_polygon_area(g.polygon) for g in gadgets)
    area = general_polygon_area(polygon)
    if pieces != area:
        raise RuntimeError(f"gadget pieces cover {pieces}, polygon area is {area}")
    return sum(general_polygon_area(g.polygon) for g in gadgets if g.kind == "connector")


def _comb_body(B, C, A, M, eps, n, *, anchored: bool, width: Fraction):
    """Vertices and gadgets of P: origin square with x-, y- and diagonal prongs."""
    band = (10 * n + 2) * eps
    vertices: List[Tau] = [(0, 0)]
    gadgets = [_gadget("origin", "origin", _rect(0, M, 0, M))]
    for i, b in enumerate(B):
        x1, x2 = b + (3 * i + 1) * eps, b + (3 * i + 2) * eps
        vertices += [(x1, 0), (x1, -2 * M), (x2, -2 * M), (x2, 0)]
        gadgets.append(_gadget(f"x_prong[{i}]", "x_prong", _rect(x1, x2, -2 * M, 0)))
    vertices.append((M, 0))
    for j, c in enumerate(C):
        y1, y2 = c + (3 * j + 1) * eps, c + (3 * j + 2) * eps
        vertices += [(M, y1), (3 * M, y1), (3 * M, y2), (M, y2)]
        gadgets.append(_gadget(f"y_prong[{j}]", "y_prong", _rect(M, 3 * M, y1, y2)))
    vertices.append((M, M))
    if anchored:
        xc = Fraction(M, 2)
        vertices += [
            (xc + width, M), (xc + width, 100 * M), (M, 100 * M), (M, 101 * M + 1),
            (0, 101 * M + 1), (0, 100 * M), (xc, 100 * M), (xc, M),
        ]
        gadgets.append(_gadget("anchor", "anchor", _rect(0, M, 100 * M, 101 * M + 1)))
        gadgets.append(_gadget("anchor_link", "connector", _rect(xc, xc + width, M, 100 * M)))
    vertices.append((0, M))
    for h, a in sorted(enumerate(A), key=lambda item: -item[1]):
        prong = [(0, a + band), (-2 * M, a + band + 2 * M), (-2 * M, a + 2 * M), (0, a)]
        vertices += prong
        gadgets.append(_gadget(f"diag_prong[{h}]", "diag_prong", prong))
    return vertices, gadgets


def gen_overlap_instance(inst: SumInstance) -> ReductionInstance:
    """Gadget polygons whose best overlap reaches 1 + 3 eps^2 exactly when inst is solvable."""
    n, m = inst.n, inst.m
    total = sum(inst.A) + sum(inst.B) + sum(inst.C) + sum(inst.D) + sum(inst.E)
    M, eps, w = _params(total, n)

    p_vertices, gadgets_p = _comb_body(inst.B, inst.C, inst.A, M, eps, n, anchored=True, width=w)
    P = validate_general_polygon(p_vertices, require_hvd=True)

    d_max, e_max = inst.D[-1], inst.E[-1]
    e_min = inst.E[0]
    bar = -2 * M + eps
    q_vertices: List[Tau] = [(-d_max, -2 * M)]
    gadgets_q = [_gadget("anchor", "anchor", _rect(0, 1, 100 * M, 100 * M + 1))]
    for order, (k, d) in enumerate(sorted(enumerate(inst.D), key=lambda item: -item[1])):
        if order:
            q_vertices.append((-d, bar))
        q_vertices += [(-d, -2 * M), (-d + eps, -2 * M), (-d + eps, bar)]
        gadgets_q.append(_gadget(f"x_square[{k}]", "x_square", _rect(-d, -d + eps, -2 * M, bar)))
    strip_top = -e_min + eps
    q_vertices += [(w, bar), (w, strip_top - w), (2 * M - eps - w, strip_top - w), (2 * M - eps - w, -e_max)]
    for order, (l, e) in enumerate(sorted(enumerate(inst.E), key=lambda item: -item[1])):
        if order:
            q_vertices.append((2 * M - eps, -e))
        q_vertices += [(2 * M, -e), (2 * M, -e + eps), (2 * M - eps, -e + eps)]
        gadgets_q.append(_gadget(f"y_square[{l}]", "y_square", _rect(2 * M - eps, 2 * M, -e, -e + eps)))
    q_vertices += [
        (w, strip_top), (w, 100 * M), (1, 100 * M), (1, 100 * M + 1), (0, 100 * M + 1),
        (0, 2 * M + w), (-2 * M + eps, 2 * M + w), (-2 * M + eps, 2 * M + eps),
        (-2 * M, 2 * M + eps), (-2 * M, 2 * M), (-2 * M + eps, 2 * M), (0, 2 * M),
        (0, bar + w), (-d_max, bar + w),
    ]
    gadgets_q += [
        _gadget("verifier", "verifier", _rect(-2 * M, -2 * M + eps, 2 * M, 2 * M + eps)),
        _gadget("spine", "connector", _rect(0, w, bar + w, 100 * M)),
        _gadget("x_bar", "connector", _rect(-d_max, w, bar, bar + w)),
        _gadget("y_strip", "connector", _rect(w, 2 * M - eps - w, strip_top - w, strip_top)),
        _gadget("y_bar", "connector", _rect(2 * M - eps - w, 2 * M - eps, -e_max, strip_top)),
        _gadget("v_strip", "connector", _rect(-2 * M + eps, 0, 2 * M, 2 * M + w)),
    ]
    Q = validate_general_polygon(q_vertices, require_hvd=True)

    mu = _connector_budget(P, gadgets_p) + _connector_budget(Q, gadgets_q)
    if not mu < eps * eps / 10:
        raise RuntimeError(f"connector area {mu} breaks the eps^2/10 budget")
    logger.info("overlap instance: n=%d m=%d, |P|=%d, |Q|=%d, M=%d", n, m, P.n, Q.n, M)
    return ReductionInstance(
        variant="overlap",
        P=P,
        Q=Q,
        threshold=1 + 3 * eps * eps,
        params=ReductionParams(M=M, eps=eps, connector_width=w, connector_area=mu),
        source=inst,
        gadgets_p=tuple(gadgets_p),
        gadgets_q=tuple(gadgets_q),
    )


def gen_containment_instance(inst3: ThreeSumInstance) -> ReductionInstance:
    """P without the anchor; Q is a fixed-size polygon that fits exactly at 3-SUM witnesses."""
    n = inst3.n
    total = sum(inst3.A) + sum(inst3.B) + sum(inst3.C)
    M, eps, w = _params(total, n)
    p_vertices, gadgets_p = _comb_body(inst3.B, inst3.C, inst3.A, M, eps, n, anchored=False, width=w)
    P = validate_general_polygon(p_vertices, require_hvd=True)

    delta = w
    q_vertices = [
        (0, -2 * M), (eps, -2 * M), (eps, -2 * M + eps), (w, -2 * M + eps), (w, 0),
        (2 * M, 0), (2 * M, eps), (2 * M - eps, eps), (2 * M - eps, w), (1, w), (1, 1),
        (0, 1), (0, eps + delta), (-2 * M + eps, 2 * M + delta), (-2 * M + eps, 2 * M + eps),
        (-2 * M, 2 * M + eps), (-2 * M, 2 * M), (-2 * M + eps, 2 * M), (0, eps),
    ]
    gadgets_q = [
        _gadget("anchor", "anchor", _rect(0, 1, 0, 1)),
        _gadget("x_square[0]", "x_square", _rect(0, eps, -2 * M, -2 * M + eps)),
        _gadget("y_square[0]", "y_square", _rect(2 * M - eps, 2 * M, 0, eps)),
        _gadget("verifier", "verifier", _rect(-2 * M, -2 * M + eps, 2 * M, 2 * M + eps)),
        _gadget("x_link", "connector", _rect(0, w, -2 * M + eps, 0)),
        _gadget("y_link", "connector", _rect(1, 2 * M - eps, 0, w)),
        _gadget(
            "diag_link",
            "connector",
            [(0, eps), (0, eps + delta), (-2 * M + eps, 2 * M + delta), (-2 * M + eps, 2 * M)],
        ),
    ]
    Q = validate_general_polygon(q_vertices, require_hvd=True)
    mu = _connector_budget(P, gadgets_p) + _connector_budget(Q, gadgets_q)
    logger.info("containment instance: n=%d, |P|=%d, |Q|=%d, M=%d", n, P.n, Q.n, M)
    return ReductionInstance(
        variant="containment",
        P=P,
        Q=Q,
        threshold=general_polygon_area(Q),
        params=ReductionParams(M=M, eps=eps, connector_width=w, connector_area=mu),
        source=inst3,
        gadgets_p=tuple(gadgets_p),
        gadgets_q=tuple(gadgets_q),
    )


# ---------------------------------------------------------------------------
# exact intersection area of general polygons

class AreaEvaluator:
    """Both triangulations, cached; translations are applied in integer space.

    Coordinates are scaled by a common denominator S so that every triangle
    and the translation are integral before clipping.
    """

    def __init__(self, P: GeneralPolygon, Q: GeneralPolygon):
        self.tris_p = triangulate(P.vertices)
        self.tris_q = triangulate(Q.vertices)
        denominators = [c.denominator for g in (P, Q) for v in g.vertices for c in v]
        self.scale = lcm(*denominators)
        self._scaled: Dict[int, Tuple[list, list]] = {}

    def _triangles(self, factor: int):
        if factor not in self._scaled:
            s = self.scale * factor

            def lift(tris):
                out = []
                for tri in tris:
                    pts = tuple((int(x * s), int(y * s)) for x, y in tri)
                    out.append((pts, _bbox(pts)))
                return out

            if len(self._scaled) > 8:
                self._scaled.clear()
            self._scaled[factor] = (lift(self.tris_p), lift(self.tris_q))
        return self._scaled[factor]

    def area(self, tau) -> Fraction:
        tx, ty = Fraction(tau[0]), Fraction(tau[1])
        factor = lcm(self.scale, tx.denominator, ty.denominator) // self.scale
        tris_p, tris_q = self._triangles(factor)
        s = self.scale * factor
        dx, dy = int(tx * s), int(ty * s)
        total = Fraction(0)
        for tri_q, box_q in tris_q:
            moved_box = (box_q[0] + dx, box_q[1] + dy, box_q[2] + dx, box_q[3] + dy)
            moved = None
            for tri_p, box_p in tris_p:
                if not _boxes_meet(moved_box, box_p):
                    continue
                if moved is None:
                    moved = tuple((x + dx, y + dy) for x, y in tri_q)
                total += convex_overlap_area(moved, tri_p)
        return total / (s * s)


@lru_cache(maxsize=32)
def _evaluator(P: GeneralPolygon, Q: GeneralPolygon) -> AreaEvaluator:
    return AreaEvaluator(P, Q)


def general_area_at(P: GeneralPolygon, Q: GeneralPolygon, tau) -> Fraction:
    """Exact area of P and Q + tau for simple rational polygons."""
    return _evaluator(P, Q).area(tau)


# ---------------------------------------------------------------------------
# certification

def overlap_candidates(ri: ReductionInstance) -> List[Tuple[Tau, Tuple[int, int, int, int]]]:
    inst: SumInstance = ri.source
    eps = ri.params.eps
    out = []
    for (i, b), (k, d), (j, c), (l, e) in itertools.product(
        enumerate(inst.B), enumerate(inst.D), enumerate(inst.C), enumerate(inst.E)
    ):
        tau = (b + d + (3 * i + 1) * eps, c + e + (3 * j + 1) * eps)
        out.append((tau, (i, k, j, l)))
    return out


def containment_candidates(ri: ReductionInstance) -> List[Tuple[Tau, Tuple[int, int]]]:
    inst: ThreeSumInstance = ri.source
    eps = ri.params.eps
    return [
        ((b + (3 * i + 1) * eps, c + (3 * j + 1) * eps), (i, j))
        for (i, b), (j, c) in itertools.product(enumerate(inst.B), enumerate(inst.C))
    ]


def _isolated(ri: ReductionInstance, tau) -> bool:
    """Prong squares of Q touch only their matching prongs of P at tau."""
    allowed = {"verifier": "diag_prong", "x_square": "x_prong", "y_square": "y_prong"}
    tx, ty = Fraction(tau[0]), Fraction(tau[1])
    for gq in ri.gadgets_q:
        if gq.kind not in allowed:
            continue
        moved = [(x + tx, y + ty) for x, y in gq.polygon.vertices]
        box = _bbox(moved)
        for gp in ri.gadgets_p:
            if gp.kind == allowed[gq.kind] or not _boxes_meet(box, _bbox(gp.polygon.vertices)):
                continue
            if convex_overlap_area(moved, gp.polygon.vertices) > 0:
                return False
    return True


def _check_size(ri: ReductionInstance) -> None:
    src = ri.source
    m = getattr(src, "m", 1)
    if src.n > 4 or m > 2:
        raise InstanceTooLarge(f"certification is desk-scale only (n <= 4, m <= 2), got n={src.n}, m={m}")


def certify_reduction(
    ri: ReductionInstance,
    samples: int = 1000,
    anchor_samples: int = 100,
    seed: Optional[int] = None,
) -> CertificationReport:
    """Forward check, candidate sweep, sampling, isolation and anchor checks."""
    if ri.variant != "overlap":
        return certify_containment(ri)
    _check_size(ri)
    inst: SumInstance = ri.source
    rng = random.Random(get_settings().seed if seed is None else seed)
    M, eps = ri.params.M, ri.params.eps
    report = CertificationReport(variant="overlap", satisfiable=False, q_vertices=ri.Q.n)

    witness = solve_32sum_brute(inst)
    report.satisfiable = witness is not None
    if witness is not None:
        a, b, c, d, e = witness
        report.witness = witness
        report.integrality = "pass" if a == b + c + d + e else "fail"
        i, j, k, l = inst.B.index(b), inst.C.index(c), inst.D.index(d), inst.E.index(e)
        tau_star = (d + b + (3 * i + 1) * eps, e + c + (3 * j + 1) * eps)
        area = general_area_at(ri.P, ri.Q, tau_star)
        report.forward_area = str(area)
        report.forward = "pass" if area >= ri.threshold else "fail"

    candidates = overlap_candidates(ri)
    best = max(general_area_at(ri.P, ri.Q, tau) for tau, _ in candidates)
    report.candidates = len(candidates)
    report.sweep_max = str(best)
    report.sweep_verdict = best >= ri.threshold
    report.sweep = "pass" if report.sweep_verdict == report.satisfiable else "fail"

    # the first candidate doubles as a cross-check of the two area evaluators
    probe = candidates[0][0]
    report.consistency = "pass" if ri.area_at(probe) == general_area_at(ri.P, ri.Q, probe) else "fail"

    denominator = 800 * inst.n * inst.n
    sample_max = Fraction(0)
    isolation_ok = True
    for s in range(samples):
        if s % 2:
            tau = (
                Fraction(rng.randint(-denominator, (M + 1) * denominator), denominator),
                Fraction(rng.randint(-denominator, (M + 1) * denominator), denominator),
            )
        else:
            base = rng.choice(candidates)[0]
            tau = (
                base[0] + Fraction(rng.randint(-16, 16), 8) * eps,
                base[1] + Fraction(rng.randint(-16, 16), 8) * eps,
            )
        sample_max = max(sample_max, ri.area_at(tau))
        isolation_ok = isolation_ok and _isolated(ri, tau)
    report.samples = samples
    report.sampling_max = str(sample_max)
    if not report.satisfiable and samples:
        report.sampling = "pass" if sample_max < ri.threshold else "fail"
    if samples:
        report.isolation = "pass" if isolation_ok else "fail"

    # outside the window only the anchor and connector slivers can overlap
    anchor_max = Fraction(0)
    drawn = 0
    while drawn < anchor_samples:
        tau = (Fraction(rng.randint(-3 * M, 4 * M)), Fraction(rng.randint(-3 * M, 4 * M)))
        if -1 <= tau[0] <= M + 1 and -1 <= tau[1] <= M + 1:
            continue
        anchor_max = max(anchor_max, ri.area_at(tau))
        drawn += 1
    if anchor_samples:
        bound = 1 + ri.params.connector_area
        report.anchor_max = str(anchor_max)
        report.anchor_bound = str(bound)
        report.anchor = "pass" if anchor_max <= bound else "fail"

    report.passed = all(
        value in ("pass", "n/a")
        for value in (
            report.integrality, report.forward, report.sweep, report.sampling,
            report.isolation, report.anchor, report.consistency,
        )
    )
    logger.info("certified overlap instance: satisfiable=%s passed=%s", report.satisfiable, report.passed)
    return report


def certify_containment(ri: ReductionInstance) -> CertificationReport:
    """Candidate containment (area equality with area(Q)) against 3-SUM brute force."""
    _check_size(ri)
    inst: ThreeSumInstance = ri.source
    report = CertificationReport(variant="containment", satisfiable=False, q_vertices=ri.Q.n)
    witness = solve_3sum_brute(inst)
    report.satisfiable = witness is not None
    if witness is not None:
        a, b, c = witness
        report.witness = witness
        report.integrality = "pass" if a == b + c else "fail"

    candidates = containment_candidates(ri)
    areas = [ri.area_at(tau) for tau, _ in candidates]
    best = max(areas)
    report.candidates = len(candidates)
    report.sweep_max = str(best)
    report.sweep_verdict = best == ri.threshold
    report.sweep = "pass" if report.sweep_verdict == report.satisfiable else "fail"
    if witness is not None:
        eps = ri.params.eps
        i, j = inst.B.index(b), inst.C.index(c)
        tau_star = (b + (3 * i + 1) * eps, c + (3 * j + 1) * eps)
        area = general_area_at(ri.P, ri.Q, tau_star)
        report.forward_area = str(area)
        report.forward = "pass" if area == ri.threshold else "fail"
    report.passed = (
        report.sweep == "pass" and report.forward in ("pass", "n/a") and report.integrality in ("pass", "n/a")
        and ri.Q.n <= 32
    )
    logger.info("certified containment instance: satisfiable=%s passed=%s", report.satisfiable, report.passed)
    return report
