# solvers.py
import logging
import time
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from config import get_settings
from core import OrthoPolygon, decompose_rectangles, polygon_area
from epindex import LiftedPoint, ep_build, ep_query, scan_extreme
from errors import InstanceTooLarge
from kernel import CandidateGrid, SlabSet, TranslationSlab, build_translation_slabs, candidate_grid
from sweepq import CoeffQuad, SlabSweep, batch_query

logger = logging.getLogger(__name__)

ALGORITHMS = ("fast", "baseline", "brute")


class SolveStats(BaseModel):
    slab_count: int = 0
    rects_p: int = 0
    rects_q: int = 0
    grid_x: int = 0
    grid_y: int = 0
    blocks: int = 0
    heavy_rows: int = 0
    queries: int = 0
    hull_builds: int = 0
    ep_queries: int = 0
    max_block_slabs: int = 0
    threshold_sq: int = 0
    max_slab_touches: int = 0
    wall_ns: int = 0
    ops: Dict[str, int] = {}


class OverlapResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    algo: str
    tau: Tuple[int, int]
    area: int
    similarity: float
    stats: SolveStats


class ContainmentResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    contained: bool
    tau: Tuple[int, int]
    area: int
    area_q: int


@dataclass
class BlockPartition:
    Y_heavy: List[int] = field(default_factory=list)
    blocks: List[Tuple[List[int], List[TranslationSlab]]] = field(default_factory=list)
    threshold_sq: int = 0


def _exact(value):
    return value if isinstance(value, int) else Fraction(value)


def evaluate_at(P: OrthoPolygon, Q: OrthoPolygon, tau) -> Fraction:
    """Exact area of P and Q + tau, summed over rectangle pairs."""
    tx, ty = _exact(tau[0]), _exact(tau[1])
    total = 0
    rects_q = decompose_rectangles(Q)
    for p in decompose_rectangles(P):
        for q in rects_q:
            width = min(p.r, q.r + tx) - max(p.l, q.l + tx)
            if width <= 0:
                continue
            height = min(p.t, q.t + ty) - max(p.b, q.b + ty)
            if height > 0:
                total += width * height
    return total


def _similarity(P, Q, area):
    return area / max(polygon_area(P), polygon_area(Q))


def _result(algo, P, Q, tau, area, stats, counters, started):
    stats.wall_ns = time.perf_counter_ns() - started
    stats.queries = counters["queries"]
    stats.hull_builds = counters["hull_builds"]
    stats.ep_queries = counters["ep_queries"]
    stats.ops = dict(sorted(counters.items()))
    logger.info("%s: area %d at tau %s (%d slabs, %.1f ms)", algo, area, tau, stats.slab_count, stats.wall_ns / 1e6)
    return OverlapResult(algo=algo, tau=tau, area=area, similarity=_similarity(P, Q, area), stats=stats)


def _base_stats(slabs, grid):
    return SolveStats(
        slab_count=slabs.count,
        rects_p=slabs.rects_p,
        rects_q=slabs.rects_q,
        grid_x=len(grid.X),
        grid_y=len(grid.Y),
    )


def solve_bruteforce(P: OrthoPolygon, Q: OrthoPolygon, limit: Optional[int] = None) -> OverlapResult:
    """Evaluate every candidate of X x Y; smallest (x, y) wins ties."""
    started = time.perf_counter_ns()
    limit = limit if limit is not None else get_settings().brute_force_limit
    grid = candidate_grid(P, Q)
    if grid.size > limit:
        raise InstanceTooLarge(f"{grid.size} candidates exceed the brute-force limit {limit}")
    counters = Counter()
    best_tau, best_area = None, -1
    for x in grid.X:
        for y in grid.Y:
            area = evaluate_at(P, Q, (x, y))
            counters["evaluations"] += 1
            if area > best_area:
                best_tau, best_area = (x, y), area
    stats = SolveStats(
        rects_p=len(decompose_rectangles(P)),
        rects_q=len(decompose_rectangles(Q)),
        grid_x=len(grid.X),
        grid_y=len(grid.Y),
    )
    return _result("brute", P, Q, best_tau, int(best_area), stats, counters, started)


def solve_baseline(P: OrthoPolygon, Q: OrthoPolygon) -> OverlapResult:
    """Answer every candidate of X x Y with one sweep, then evaluate each quad."""
    started = time.perf_counter_ns()
    slabs = build_translation_slabs(P, Q)
    grid = candidate_grid(P, Q)
    counters = Counter()
    sweep = SlabSweep(slabs, grid, counters)
    best_tau, best_area = None, None
    for y in grid.Y:
        sweep.advance_to(y)
        for x in grid.X:
            area = sweep.query(x).value(x, y)
            if best_area is None or area > best_area or (area == best_area and (x, y) < best_tau):
                best_tau, best_area = (x, y), area
    stats = _base_stats(slabs, grid)
    stats.max_slab_touches = sweep.tree.max_touches
    return _result("baseline", P, Q, best_tau, best_area, stats, counters, started)


def partition_blocks(slabs: SlabSet, grid: CandidateGrid) -> BlockPartition:
    """Cut Y into minimal contiguous runs whose associated slab count reaches
    sqrt(18 * n_r * m_r); the last y of every run moves to Y_heavy."""
    threshold_sq = 18 * slabs.rects_p * slabs.rects_q
    by_b: Dict[int, List[TranslationSlab]] = {}
    for slab in slabs.slabs:
        by_b.setdefault(slab.b, []).append(slab)

    partition = BlockPartition(threshold_sq=threshold_sq)
    run: List[int] = []
    count = 0
    for y in grid.Y:
        run.append(y)
        count += len(by_b.get(y, ()))
        if count * count >= threshold_sq:
            partition.Y_heavy.append(run.pop())
            partition.blocks.append((run, [s for ys in run for s in by_b.get(ys, ())]))
            run, count = [], 0
    if run:
        partition.Y_heavy.append(run.pop())
        partition.blocks.append((run, [s for ys in run for s in by_b.get(ys, ())]))
    partition.blocks = [(ys, rs) for ys, rs in partition.blocks if ys]
    return partition


def split_runs(X, slabs):
    """Split sorted X into maximal runs that no slab endpoint cuts."""
    cuts = sorted({s.l for s in slabs} | {s.r for s in slabs})
    runs: List[List[int]] = []
    current_cell = None
    for x in X:
        cell = bisect_right(cuts, x)
        if runs and cell == current_cell:
            runs[-1].append(x)
        else:
            runs.append([x])
            current_cell = cell
    return runs


def lift_points(ys: List[int], covering: List[TranslationSlab]) -> List[LiftedPoint]:
    """Prefix-summed lifted points of one block and one run.

    covering holds the slabs that contain the whole run and start strictly
    above ys[0]; point j sums those with b <= ys[j].
    """
    ordered = sorted(covering, key=lambda s: s.b)
    y1 = ys[0]
    sa = sb = sc = sd = 0
    k = 0
    points = []
    for j, y in enumerate(ys):
        while k < len(ordered) and ordered[k].b <= y:
            s = ordered[k]
            sa += s.A
            sb += s.B
            sc += s.C
            sd += s.D
            k += 1
        points.append(LiftedPoint(u=y - y1, v=sb + sd * y, w=sa + sc * y, tag=j))
    return points


def solve_fast(
    P: OrthoPolygon,
    Q: OrthoPolygon,
    shadow: Optional[bool] = None,
    seed: int = 0,
) -> OverlapResult:
    """Batched maximum-overlap search.

    Heavy rows are answered directly by the sweep. Every other block is
    answered from one row of coefficient queries plus one extreme-point
    query per x-candidate over the block's lifted points.
    """
    started = time.perf_counter_ns()
    settings = get_settings()
    shadow = settings.shadow_check if shadow is None else shadow
    slabs = build_translation_slabs(P, Q)
    grid = candidate_grid(P, Q)
    counters = Counter()
    partition = partition_blocks(slabs, grid)
    stats = _base_stats(slabs, grid)
    stats.threshold_sq = partition.threshold_sq
    stats.blocks = len(partition.blocks)
    stats.heavy_rows = len(partition.Y_heavy)

    heavy = [(x, y) for x in grid.X for y in partition.Y_heavy]
    best_tau, best_area = None, None
    for (x, y), quad in zip(heavy, batch_query(slabs, grid, heavy, counters)):
        area = quad.value(x, y)
        if best_area is None or area > best_area:
            best_tau, best_area = (x, y), area

    sweep = SlabSweep(slabs, grid, counters)
    for ys, block_slabs in partition.blocks:
        y1 = ys[0]
        sweep.advance_to(y1)
        later = [s for s in block_slabs if s.b > y1]
        stats.max_block_slabs = max(stats.max_block_slabs, len(block_slabs))
        for run in split_runs(grid.X, later):
            first, last = run[0], run[-1]
            covering = [s for s in later if s.l <= first and last < s.r]
            points = lift_points(ys, covering)
            index = ep_build(points, seed=seed, counters=counters)
            for x in run:
                quad: CoeffQuad = sweep.query(x)
                point, best_w = ep_query(index, (quad.C + quad.D * x, x, 1))
                if shadow:
                    _, expected = scan_extreme(points, (quad.C + quad.D * x, x, 1))
                    if expected != best_w:
                        logger.error("extreme-point mismatch at x=%d, y1=%d: %d vs %d", x, y1, best_w, expected)
                        raise RuntimeError("extreme-point query disagrees with linear scan")
                area = quad.A + quad.B * x + quad.C * y1 + quad.D * x * y1 + best_w
                if area > best_area:
                    best_tau, best_area = (x, ys[point.tag]), area
    stats.max_slab_touches = sweep.tree.max_touches
    return _result("fast", P, Q, best_tau, best_area, stats, counters, started)


def solve(P: OrthoPolygon, Q: OrthoPolygon, algo: str = "fast", limit: Optional[int] = None) -> OverlapResult:
    if algo == "fast":
        return solve_fast(P, Q)
    if algo == "baseline":
        return solve_baseline(P, Q)
    if algo == "brute":
        return solve_bruteforce(P, Q, limit)
    raise ValueError(f"unknown algorithm {algo!r}, expected one of {ALGORITHMS}")


def solve_containment(
    P: OrthoPolygon, Q: OrthoPolygon, algo: str = "fast", limit: Optional[int] = None
) -> ContainmentResult:
    """Q fits inside P by translation exactly when the best overlap is area(Q)."""
    result = solve(P, Q, algo, limit)
    area_q = polygon_area(Q)
    return ContainmentResult(contained=result.area == area_q, tau=result.tau, area=result.area, area_q=area_q)
