# genbench.py
"""Instance generators and the scaling benchmark.

Benchmarks report operation counters as the scaling signal; wall time is
recorded next to them but never asserted on.
"""
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from math import sqrt
from typing import Dict, Iterable, List, Optional, Tuple, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict

from config import get_settings
from core import OrthoPolygon, validate_polygon
from errors import GenerationFailed, PolygonValidationError
from kernel import candidate_grid
from solvers import SolveStats, solve

logger = logging.getLogger(__name__)

FAMILIES = ("comb", "random")
CSV_COLUMNS = ["family", "n", "m", "algo", "trial", "wall_ns", "op_name", "op_count"]
HEAVY_ROW_SLACK = sqrt(18) + 1


class BenchRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: str
    n: int
    m: int
    algo: str
    trial: int
    seed: int
    wall_ns: int
    ops: Dict[str, int]

    @property
    def total_ops(self) -> int:
        return sum(self.ops.values())


class BenchReport(BaseModel):
    records: List[BenchRecord]
    medians: List[Dict[str, Union[str, float]]]
    slopes: Dict[str, float]
    budget_exceeded: bool = False


# ---------------------------------------------------------------------------
# generators

def _columns(k: int, rng: random.Random, coord_range: int) -> List[Tuple[int, int, int, int]]:
    """k columns (x0, x1, bottom, top); neighbours overlap around the middle
    row and never share a top or a bottom."""
    mid = coord_range // 2
    width = max(1, coord_range // k)
    columns = []
    x = 0
    for i in range(k):
        x_next = x + rng.randint(1, width)
        bottom = rng.randrange(0, mid)
        top = rng.randrange(mid + 1, coord_range + 1)
        if columns:
            tries = 0
            while bottom == columns[-1][2] or top == columns[-1][3]:
                tries += 1
                if tries > 50:
                    raise GenerationFailed("could not pick distinct neighbouring column heights")
                bottom = rng.randrange(0, mid)
                top = rng.randrange(mid + 1, coord_range + 1)
        columns.append((x, x_next, bottom, top))
        x = x_next
    return columns


def _column_polygon(columns) -> List[Tuple[int, int]]:
    lower = []
    for x0, x1, bottom, _ in columns:
        lower += [(x0, bottom), (x1, bottom)]
    upper = []
    for x0, x1, _, top in reversed(columns):
        upper += [(x1, top), (x0, top)]
    return lower + upper


def gen_random_ortho(n_target: int, seed: int, coord_range: int = 1024) -> OrthoPolygon:
    """Random x-monotone orthogonal polygon with n_target/2 to n_target vertices.

    Columns are glued side by side, then the result is randomly transposed
    and reflected.
    """
    if n_target < 4 or n_target % 2:
        raise ValueError("n_target must be an even integer >= 4")
    if coord_range < 4:
        raise ValueError("coord_range must be at least 4")
    rng = random.Random(seed)
    k = max(1, n_target // 4)
    for attempt in range(10):
        vertices = _column_polygon(_columns(k, rng, coord_range))
        if rng.random() < 0.5:
            vertices = [(y, x) for x, y in vertices]
        if rng.random() < 0.5:
            vertices = [(-x, y) for x, y in vertices]
        if rng.random() < 0.5:
            vertices = [(x, -y) for x, y in vertices]
        try:
            polygon = validate_polygon(vertices)
        except PolygonValidationError as exc:
            logger.debug("attempt %d rejected: %s", attempt, exc)
            continue
        if n_target // 2 <= polygon.n <= n_target:
            return polygon
    raise GenerationFailed(f"no valid polygon with about {n_target} vertices after 10 attempts (seed {seed})")


def _comb(k: int, pitch: int, depth_step: int, spacing: int) -> OrthoPolygon:
    """Horizontal bar of height 1 with k unit-wide prongs hanging below it."""
    depths = [spacing * (1 + i * depth_step) for i in range(k)]
    vertices = []
    for i, depth in enumerate(depths):
        x = i * pitch
        if i:
            vertices.append((x, 0))
        vertices += [(x, -depth), (x + 1, -depth)]
        if i < k - 1:
            vertices.append((x + 1, 0))
    right = (k - 1) * pitch + 1
    vertices += [(right, 1), (0, 1)]
    return validate_polygon(vertices)


def gen_comb_pair(k: int, spacing: int = 2) -> Tuple[OrthoPolygon, OrthoPolygon]:
    """Two combs with prong pitches k and k + 1.

    Pitches and depth steps are coprime, so i*k - j*(k+1) is distinct for
    every prong pair and both X and Y have at least k^2 candidates.
    """
    if k < 2:
        raise ValueError("a comb needs at least 2 prongs")
    P = _comb(k, pitch=k, depth_step=k, spacing=spacing)
    Q = _comb(k, pitch=k + 1, depth_step=k + 1, spacing=spacing)
    grid = candidate_grid(P, Q)
    if len(grid.X) < k * k or len(grid.Y) < k * k:
        raise GenerationFailed(f"comb pair with k={k} has only {len(grid.X)} x and {len(grid.Y)} y candidates")
    logger.debug("comb pair k=%d: |X|=%d, |Y|=%d", k, len(grid.X), len(grid.Y))
    return P, Q


def make_instance(family: str, size: int, seed: int) -> Tuple[OrthoPolygon, OrthoPolygon]:
    if family == "comb":
        return gen_comb_pair(max(2, size // 4))
    if family == "random":
        half = max(4, (size // 2) & ~1)
        return gen_random_ortho(size, seed), gen_random_ortho(half, seed + 1)
    raise ValueError(f"unknown family {family!r}, expected one of {FAMILIES}")


# ---------------------------------------------------------------------------
# benchmark

def check_block_accounting(stats: SolveStats) -> List[str]:
    """Block sizes and the heavy-row count against their partition bounds."""
    problems = []
    if stats.threshold_sq == 0:
        return problems
    if stats.max_block_slabs ** 2 > stats.threshold_sq:
        problems.append(
            f"a block holds {stats.max_block_slabs} slabs, above sqrt({stats.threshold_sq})"
        )
    if (stats.heavy_rows - 1) ** 2 > stats.threshold_sq:
        problems.append(
            f"{stats.heavy_rows} heavy rows exceed {HEAVY_ROW_SLACK:.3f} * sqrt(n_r * m_r)"
        )
    for problem in problems:
        logger.warning("block accounting: %s", problem)
    return problems


def run_cell(family: str, size: int, algo: str, trial: int, seed: int) -> BenchRecord:
    P, Q = make_instance(family, size, seed)
    result = solve(P, Q, algo)
    if algo == "fast":
        check_block_accounting(result.stats)
    return BenchRecord(
        family=family,
        n=P.n,
        m=Q.n,
        algo=algo,
        trial=trial,
        seed=seed,
        wall_ns=result.stats.wall_ns,
        ops=result.stats.ops,
    )


def _record_costs(records: Iterable[BenchRecord]) -> pd.DataFrame:
    """One row per record and cost name: wall_ns, the summed ops and every counter."""
    rows = []
    for r in records:
        costs = {"wall_ns": r.wall_ns, "ops": r.total_ops, **r.ops}
        for name, value in costs.items():
            rows.append({"algo": r.algo, "n": r.n, "m": r.m, "nm": r.n * r.m, "name": name, "cost": value})
    return pd.DataFrame(rows, columns=["algo", "n", "m", "nm", "name", "cost"])


def size_medians(records: Iterable[BenchRecord]) -> List[Dict[str, Union[str, float]]]:
    costs = _record_costs(records)
    costs = costs[costs["name"].isin(["wall_ns", "ops"])]
    if costs.empty:
        return []
    table = costs.pivot_table(index=["algo", "n", "m"], columns="name", values="cost", aggfunc="median").reset_index()
    return [
        {"algo": row.algo, "n": int(row.n), "m": int(row.m), "wall_ns": float(row.wall_ns), "ops": float(row.ops)}
        for row in table.itertuples(index=False)
    ]


def fit_slopes(records: Iterable[BenchRecord]) -> Dict[str, float]:
    """Least-squares slope of log(cost) against log(n*m), per algo and cost.

    Costs are wall_ns, the summed operation count ("ops") and each named
    counter. Medians over trials are fitted; fewer than two sizes give no slope.
    """
    costs = _record_costs(records)
    if costs.empty:
        return {}
    medians = costs.groupby(["algo", "name", "nm"], as_index=False)["cost"].median()
    medians = medians[medians["cost"] > 0]
    slopes: Dict[str, float] = {}
    for (algo, name), group in medians.groupby(["algo", "name"]):
        if len(group) < 2:
            continue
        x = np.log(group["nm"].to_numpy(dtype=float))
        y = np.log(group["cost"].to_numpy(dtype=float))
        slope, _ = np.polyfit(x, y, 1)
        slopes[f"{algo}:{name}"] = float(slope)
    return slopes


def run_bench(
    family: str,
    sizes: List[int],
    algos: List[str],
    trials: int = 1,
    seed: Optional[int] = None,
    budget_s: Optional[float] = None,
    workers: int = 1,
) -> BenchReport:
    """Run every (size, algo, trial) cell; stops early once the budget is spent.

    The instance seed depends on the size only, so trials repeat the same
    instance and their counters agree.
    """
    settings = get_settings()
    seed = settings.seed if seed is None else seed
    budget_s = settings.bench_budget_s if budget_s is None else budget_s
    cells = [(family, size, algo, trial, seed + size) for size in sizes for algo in algos for trial in range(trials)]
    deadline = time.monotonic() + budget_s
    records: List[BenchRecord] = []
    exceeded = False

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run_cell, *cell) for cell in cells]
            for future in as_completed(futures):
                records.append(future.result())
                if time.monotonic() > deadline:
                    exceeded = True
                    for pending in futures:
                        pending.cancel()
                    break
        records.sort(key=lambda r: (r.n * r.m, r.algo, r.trial))
    else:
        for cell in cells:
            if time.monotonic() > deadline:
                exceeded = True
                break
            records.append(run_cell(*cell))
            logger.info("bench %s size=%d %s trial %d done", *cell[:4])

    if exceeded:
        logger.warning("bench budget of %.0f s spent after %d of %d cells", budget_s, len(records), len(cells))
    return BenchReport(
        records=records,
        medians=size_medians(records),
        slopes=fit_slopes(records),
        budget_exceeded=exceeded,
    )


def write_bench_csv(records: Iterable[BenchRecord], path: str) -> None:
    rows = [
        [r.family, r.n, r.m, r.algo, r.trial, r.wall_ns, name, count]
        for r in records
        for name, count in sorted(r.ops.items())
    ]
    pd.DataFrame(rows, columns=CSV_COLUMNS).to_csv(path, index=False)


def read_bench_csv(path: str) -> List[BenchRecord]:
    table = pd.read_csv(path, dtype={"family": str, "algo": str, "op_name": str})
    key = ["family", "n", "m", "algo", "trial", "wall_ns"]
    records = []
    for (family, n, m, algo, trial, wall_ns), group in table.groupby(key, sort=False):
        ops = {name: int(count) for name, count in zip(group["op_name"], group["op_count"])}
        records.append(
            BenchRecord(
                family=family, n=int(n), m=int(m), algo=algo, trial=int(trial), seed=0, wall_ns=int(wall_ns), ops=ops
            )
        )
    return records
