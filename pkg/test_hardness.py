# test_hardness.py
import random
from fractions import Fraction

import pytest
from pydantic import ValidationError

from conftest import random_pair
from core import general_polygon_area, to_general
from errors import GenerationFailed, InstanceTooLarge
from hardness import (
    AreaEvaluator,
    SumInstance,
    ThreeSumInstance,
    certify_containment,
    certify_reduction,
    containment_candidates,
    enumerate_sum_instances,
    gen_containment_instance,
    gen_overlap_instance,
    general_area_at,
    overlap_candidates,
    random_sum_instance,
    random_three_sum_instance,
    solve_32sum_brute,
    solve_32sum_hashjoin,
    solve_3sum_brute,
)
from solvers import evaluate_at

SAT = SumInstance(A=[10], B=[2], C=[3], D=[1], E=[4])
UNSAT = SumInstance(A=[20], B=[2], C=[3], D=[1], E=[4])


@pytest.fixture(scope="module")
def sat_instance():
    return gen_overlap_instance(SAT)


@pytest.fixture(scope="module")
def unsat_instance():
    return gen_overlap_instance(UNSAT)


def test_sets_are_sorted_and_deduplicated():
    inst = SumInstance(A=[3, 1, 2], B=[5, 4, 4, 6], C=[3, 2, 1], D=[1], E=[2])
    assert inst.B == (4, 5, 6)
    assert (inst.n, inst.m) == (3, 1)


@pytest.mark.parametrize(
    "sets",
    [
        dict(A=[1, 2], B=[1], C=[1], D=[1], E=[1]),
        dict(A=[1], B=[1], C=[1], D=[1, 2], E=[1, 2]),
        dict(A=[1], B=[1], C=[1], D=[1], E=[1, 2]),
        dict(A=[0], B=[1], C=[1], D=[1], E=[1]),
    ],
)
def test_invalid_sets(sets):
    with pytest.raises(ValidationError):
        SumInstance(**sets)


def test_three_sum_embedding():
    inst = SumInstance.from_three_sum([5, 9], [2, 3], [3, 4])
    assert inst.A == (7, 11) and inst.D == inst.E == (1,)
    assert solve_32sum_brute(inst) is not None
    assert solve_3sum_brute(ThreeSumInstance(A=[5, 9], B=[2, 3], C=[3, 4])) is not None
    assert solve_3sum_brute(ThreeSumInstance(A=[4, 9], B=[2, 3], C=[4, 5])) is None


@pytest.mark.parametrize("seed", range(30))
def test_oracles_agree(seed):
    inst = random_sum_instance(3, 2, 10, seed, planted=seed % 2 == 0)
    brute = solve_32sum_brute(inst)
    assert (brute is None) == (solve_32sum_hashjoin(inst) is None)
    if seed % 2 == 0:
        assert brute is not None
    if brute is not None:
        a, b, c, d, e = brute
        assert a == b + c + d + e


def test_brute_force_limit():
    with pytest.raises(InstanceTooLarge):
        solve_32sum_brute(SAT, limit=0)


def test_enumeration_size():
    instances = list(enumerate_sum_instances(1, 1, 2))
    assert len(instances) == 18
    assert len(set(instances)) == 18


def test_every_edge_is_horizontal_vertical_or_anti_diagonal(sat_instance):
    for polygon in (sat_instance.P, sat_instance.Q):
        pts = polygon.vertices
        for i in range(len(pts)):
            (x1, y1), (x2, y2) = pts[i], pts[(i + 1) % len(pts)]
            assert x1 == x2 or y1 == y2 or x2 - x1 == y1 - y2


def test_connector_budget_and_threshold(sat_instance):
    eps = sat_instance.params.eps
    assert eps == Fraction(1, 100)
    assert sat_instance.params.M == 2000
    assert 0 < sat_instance.params.connector_area < eps * eps / 10
    assert sat_instance.threshold == 1 + 3 * eps * eps
    assert general_polygon_area(sat_instance.P) == sum(
        general_polygon_area(g.polygon) for g in sat_instance.gadgets_p
    )


def test_forward_translation_reaches_threshold(sat_instance):
    eps = sat_instance.params.eps
    tau = (2 + 1 + eps, 3 + 4 + eps)
    area = general_area_at(sat_instance.P, sat_instance.Q, tau)
    assert area >= sat_instance.threshold
    assert area == sat_instance.area_at(tau)


def test_unsat_candidates_stay_below_threshold(unsat_instance):
    for tau, _ in overlap_candidates(unsat_instance):
        assert unsat_instance.area_at(tau) < unsat_instance.threshold


def test_evaluators_agree_off_candidates(sat_instance):
    rng = random.Random(8)
    for _ in range(3):
        tau = (Fraction(rng.randint(0, 4000), 400), Fraction(rng.randint(0, 4000), 400))
        assert general_area_at(sat_instance.P, sat_instance.Q, tau) == sat_instance.area_at(tau)


@pytest.mark.parametrize("seed", range(3))
def test_general_area_matches_orthogonal_evaluation(seed):
    P, Q = random_pair(seed)
    evaluator = AreaEvaluator(to_general(P), to_general(Q))
    rng = random.Random(seed)
    for _ in range(10):
        tau = (Fraction(rng.randint(-90, 90), 7), Fraction(rng.randint(-90, 90), 3))
        assert evaluator.area(tau) == evaluate_at(P, Q, tau)


def test_certify_satisfiable(sat_instance):
    report = certify_reduction(sat_instance, samples=40, anchor_samples=10, seed=1)
    assert report.satisfiable and report.witness == (10, 2, 3, 1, 4)
    assert report.integrality == "pass"
    assert report.forward == "pass"
    assert report.sweep == "pass" and report.sweep_verdict
    assert report.isolation == "pass"
    assert report.anchor == "pass"
    assert report.anchor_bound == str(1 + sat_instance.params.connector_area)
    assert Fraction(report.anchor_max) <= Fraction(report.anchor_bound)
    assert report.consistency == "pass"
    assert report.passed


def test_certify_unsatisfiable(unsat_instance):
    report = certify_reduction(unsat_instance, samples=40, anchor_samples=10, seed=2)
    assert not report.satisfiable
    assert report.sweep == "pass" and not report.sweep_verdict
    assert report.sampling == "pass"
    assert report.passed


def test_certification_is_desk_scale_only():
    big = SumInstance(A=[1, 2, 3, 4, 5], B=[1, 2, 3, 4, 5], C=[1, 2, 3, 4, 5], D=[1], E=[1])
    with pytest.raises(InstanceTooLarge):
        certify_reduction(gen_overlap_instance(big), samples=0, anchor_samples=0)


@pytest.mark.parametrize("A, expected", [([5], True), ([6], False)])
def test_containment_variant(A, expected):
    ri = gen_containment_instance(ThreeSumInstance(A=A, B=[2], C=[3]))
    assert ri.Q.n <= 19
    assert ri.threshold == general_polygon_area(ri.Q)
    report = certify_containment(ri)
    assert report.satisfiable is expected
    assert report.sweep_verdict is expected
    assert report.passed
    best = max(ri.area_at(tau) for tau, _ in containment_candidates(ri))
    assert (best == ri.threshold) is expected


def test_certify_reduction_routes_containment():
    ri = gen_containment_instance(ThreeSumInstance(A=[5, 7], B=[1, 2], C=[3, 4]))
    assert certify_reduction(ri).variant == "containment"


@pytest.mark.slow
def test_exhaustive_small_instances():
    for inst in enumerate_sum_instances(1, 1, 3):
        report = certify_reduction(gen_overlap_instance(inst), samples=20, anchor_samples=5, seed=0)
        assert report.passed, inst


@pytest.mark.parametrize("seed", range(20))
def test_bounded_instances_stay_under_the_cap(seed):
    inst = random_sum_instance(3, 2, 3, seed, planted=True, a_max=12)
    assert max(inst.A + inst.B + inst.C + inst.D + inst.E) <= 12
    assert solve_32sum_brute(inst) is not None


def test_planted_sum_must_fit_the_cap():
    with pytest.raises(GenerationFailed):
        random_sum_instance(1, 1, 3, 0, planted=True, a_max=3)


@pytest.mark.parametrize("seed", range(10))
def test_random_three_sum_planting(seed):
    inst = random_three_sum_instance(3, 6, seed, planted=True)
    assert solve_3sum_brute(inst) is not None


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(200))
def test_random_bounded_overlap_instances(seed):
    n = 1 + seed % 3
    m = min(n, 1 + seed % 2)
    inst = random_sum_instance(n, m, 3, seed, planted=seed % 2 == 0, a_max=12)
    report = certify_reduction(gen_overlap_instance(inst), samples=100, anchor_samples=10, seed=seed)
    assert report.passed, inst
    assert report.satisfiable == (solve_32sum_brute(inst) is not None)


@pytest.mark.slow
@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("seed", range(10))
def test_random_containment_instances(n, seed):
    inst = random_three_sum_instance(n, 6, seed, planted=seed % 2 == 0)
    report = certify_containment(gen_containment_instance(inst))
    assert report.passed, inst
    assert report.sweep_verdict == (solve_3sum_brute(inst) is not None)
