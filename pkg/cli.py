# cli.py
"""Command-line entry point: python cli.py <command> ...

Every command prints one JSON payload, {"status": "success", ...} or
{"status": "error", "message": ...}, and exits with 0 (success), 1 (other
failure), 2 (validation or parse error) or 3 (limit exceeded).
"""
import argparse
import logging
import os
import sys
from fractions import Fraction
from typing import Any, Callable, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from config import configure_logging, get_settings
from errors import EXIT_FAILURE, EXIT_LIMIT, EXIT_OK, EXIT_VALIDATION, OverlapError
from genbench import fit_slopes, gen_comb_pair, gen_random_ortho, read_bench_csv, run_bench, write_bench_csv
from hardness import (
    ReductionInstance,
    SumInstance,
    ThreeSumInstance,
    certify_reduction,
    gen_containment_instance,
    gen_overlap_instance,
)
from kernel import build_translation_slabs, candidate_grid
from polyio import read_json, read_polygon, reduction_meta, to_json, write_json, write_polygon
from solvers import ALGORITHMS, evaluate_at, solve, solve_containment
from viz import write_svg

logger = logging.getLogger(__name__)

Outcome = Tuple[int, Dict[str, Any]]


class RunConfig(BaseModel):
    """One fully resolved command: CLI flags merged over the environment settings."""

    model_config = ConfigDict(frozen=True)

    command: Literal["solve", "gen", "bench", "verify", "viz"]
    action: Optional[str] = None
    inputs: List[str] = []
    outputs: List[str] = []
    algo: str = "fast"
    seed: int
    brute_force_limit: int = Field(gt=0)
    bench_budget_s: float = Field(gt=0)
    check: bool = False
    options: Dict[str, Any] = {}


def _success(**fields) -> Dict[str, Any]:
    return {"status": "success", **fields}


def _read_ortho_pair(cfg: RunConfig):
    if len(cfg.inputs) != 2:
        raise OverlapError("expected two polygon files, P and Q")
    return read_polygon(cfg.inputs[0], "ortho"), read_polygon(cfg.inputs[1], "ortho")


# -- commands ---------------------------------------------------------------

def cmd_solve(cfg: RunConfig) -> Outcome:
    P, Q = _read_ortho_pair(cfg)
    result = solve(P, Q, cfg.algo, cfg.brute_force_limit)
    payload = _success(**result.model_dump())
    if cfg.check:
        area = evaluate_at(P, Q, result.tau)
        payload["check"] = {"evaluate_at": int(area), "ok": area == result.area}
        if area != result.area:
            payload["status"] = "error"
            payload["message"] = "re-evaluating the returned translation gives a different area"
    code = EXIT_OK if payload["status"] == "success" else EXIT_FAILURE
    if cfg.outputs:
        write_json(payload, cfg.outputs[0])
        summary = {key: payload[key] for key in ("status", "message") if key in payload}
        payload = {**summary, "out": cfg.outputs[0], "area": payload["area"], "tau": payload["tau"]}
    return code, payload


def _gen_random(cfg: RunConfig) -> Outcome:
    n = cfg.options["n"]
    written = []
    for i, path in enumerate(cfg.outputs):
        polygon = gen_random_ortho(n, cfg.seed + i, cfg.options["coord_range"])
        write_polygon(polygon, path)
        written.append({"path": path, "vertices": polygon.n})
    return EXIT_OK, _success(polygons=written, seed=cfg.seed)


def _gen_comb(cfg: RunConfig) -> Outcome:
    if len(cfg.outputs) != 2:
        raise OverlapError("gen comb writes two files: --out P.poly Q.poly")
    P, Q = gen_comb_pair(cfg.options["k"], cfg.options["spacing"])
    write_polygon(P, cfg.outputs[0])
    write_polygon(Q, cfg.outputs[1])
    grid = candidate_grid(P, Q)
    return EXIT_OK, _success(vertices={"P": P.n, "Q": Q.n}, grid_x=len(grid.X), grid_y=len(grid.Y))


def build_reduction(variant: str, sets: Dict[str, List[int]]) -> ReductionInstance:
    if variant == "containment":
        return gen_containment_instance(ThreeSumInstance(A=sets["A"], B=sets["B"], C=sets["C"]))
    return gen_overlap_instance(SumInstance(**sets))


def _gen_hardness(cfg: RunConfig) -> Outcome:
    if len(cfg.outputs) != 3:
        raise OverlapError("gen hardness writes three files: --out P.poly Q.poly meta.json")
    sets = read_json(cfg.options["sets"])
    ri = build_reduction(cfg.options["variant"], sets)
    p_path, q_path, meta_path = cfg.outputs
    write_polygon(ri.P, p_path)
    write_polygon(ri.Q, q_path)
    meta = reduction_meta(ri, p_path, q_path)
    write_json(meta, meta_path)
    return EXIT_OK, _success(meta=meta)


def _gen_slabs(cfg: RunConfig) -> Outcome:
    P, Q = _read_ortho_pair(cfg)
    slabs = build_translation_slabs(P, Q)
    rows = ["l\tr\tb\tA\tB\tC\tD"] + ["\t".join(str(v) for v in slab) for slab in slabs.slabs]
    with open(cfg.outputs[0], "w") as handle:
        handle.write("\n".join(rows) + "\n")
    return EXIT_OK, _success(slab_count=slabs.count, rects_p=slabs.rects_p, rects_q=slabs.rects_q)


GENERATORS: Dict[str, Callable[[RunConfig], Outcome]] = {
    "random": _gen_random,
    "comb": _gen_comb,
    "hardness": _gen_hardness,
    "slabs": _gen_slabs,
}


def cmd_gen(cfg: RunConfig) -> Outcome:
    return GENERATORS[cfg.action](cfg)


def cmd_bench(cfg: RunConfig) -> Outcome:
    if cfg.action == "fit":
        records = read_bench_csv(cfg.inputs[0])
        return EXIT_OK, _success(records=len(records), slopes=fit_slopes(records))
    report = run_bench(
        cfg.options["family"],
        cfg.options["sizes"],
        cfg.options["algos"],
        trials=cfg.options["trials"],
        seed=cfg.seed,
        budget_s=cfg.bench_budget_s,
        workers=cfg.options["workers"],
    )
    if cfg.outputs:
        write_bench_csv(report.records, cfg.outputs[0])
    payload = _success(
        records=len(report.records),
        medians=report.medians,
        slopes=report.slopes,
        budget_exceeded=report.budget_exceeded,
    )
    if report.budget_exceeded:
        payload["status"] = "error"
        payload["error"] = "BudgetExceeded"
        payload["message"] = f"bench budget of {cfg.bench_budget_s:.0f} s spent; partial results kept"
        return EXIT_LIMIT, payload
    return EXIT_OK, payload


def _resolve(base: str, path: str) -> str:
    if os.path.isabs(path) or os.path.exists(path):
        return path
    return os.path.join(os.path.dirname(base), path)


def _verify_reduction(cfg: RunConfig) -> Outcome:
    meta_path = cfg.inputs[0]
    meta = read_json(meta_path)
    ri = build_reduction(meta["variant"], meta["sets"])
    files = {}
    for name, expected in (("P", ri.P), ("Q", ri.Q)):
        path = meta.get(name)
        if path and os.path.exists(_resolve(meta_path, path)):
            files[name] = read_polygon(_resolve(meta_path, path), "general") == expected
    report = certify_reduction(
        ri,
        samples=cfg.options["samples"],
        anchor_samples=cfg.options["anchor_samples"],
        seed=cfg.seed,
    )
    passed = report.passed and all(files.values())
    payload = {"status": "success" if passed else "error", "files_match": files, "report": report.model_dump()}
    if not passed:
        payload["message"] = "certification failed"
        return EXIT_FAILURE, payload
    return EXIT_OK, payload


def _verify_containment(cfg: RunConfig) -> Outcome:
    P, Q = _read_ortho_pair(cfg)
    result = solve_containment(P, Q, cfg.algo, cfg.brute_force_limit)
    return EXIT_OK, _success(**result.model_dump())


def cmd_verify(cfg: RunConfig) -> Outcome:
    if cfg.action == "containment":
        return _verify_containment(cfg)
    return _verify_reduction(cfg)


def cmd_viz(cfg: RunConfig) -> Outcome:
    P = read_polygon(cfg.inputs[0])
    Q = read_polygon(cfg.inputs[1])
    tau = cfg.options["tau"]
    write_svg(P, Q, tau, cfg.outputs[0])
    return EXIT_OK, _success(out=cfg.outputs[0], tau=[str(t) for t in tau])


COMMANDS: Dict[str, Callable[[RunConfig], Outcome]] = {
    "solve": cmd_solve,
    "gen": cmd_gen,
    "bench": cmd_bench,
    "verify": cmd_verify,
    "viz": cmd_viz,
}


# -- argument parsing -------------------------------------------------------

def _int_list(text: str) -> List[int]:
    return [int(part) for part in text.split(",") if part]


def _name_list(text: str) -> List[str]:
    return [part for part in text.split(",") if part]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="64-bit seed for every random choice")
    common.add_argument("--brute-limit", type=int, default=None, help="candidate cap for the brute-force solver")
    common.add_argument("--budget", type=float, default=None, help="benchmark budget in seconds")
    common.add_argument("--log-level", choices=["error", "info", "debug"], default=None)

    parser = argparse.ArgumentParser(prog="cli.py", description="Exact maximum overlap of orthogonal polygons")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("solve", parents=[common], help="maximize the overlap of two polygon files")
    p.add_argument("P", nargs="?")
    p.add_argument("Q", nargs="?")
    p.add_argument("--in", dest="input", nargs=2, metavar=("P", "Q"), default=None)
    p.add_argument("--out", default=None, help="write the result JSON here instead of stdout")
    p.add_argument("--algo", choices=ALGORITHMS, default="fast")
    p.add_argument("--check", action="store_true", help="re-evaluate the returned translation")

    gen = commands.add_parser("gen", help="write generated instances")
    kinds = gen.add_subparsers(dest="action", required=True)
    g = kinds.add_parser("random", parents=[common])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--coord-range", type=int, default=1024)
    g.add_argument("--out", nargs="+", required=True)
    g = kinds.add_parser("comb", parents=[common])
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--spacing", type=int, default=2)
    g.add_argument("--out", nargs=2, required=True)
    g = kinds.add_parser("hardness", parents=[common])
    g.add_argument("--sets", required=True, help="JSON file with the sets A, B, C (and D, E)")
    g.add_argument("--variant", choices=["overlap", "containment"], default="overlap")
    g.add_argument("--out", nargs=3, required=True)
    g = kinds.add_parser("slabs", parents=[common])
    g.add_argument("P")
    g.add_argument("Q")
    g.add_argument("--out", nargs=1, required=True)

    b = commands.add_parser("bench", parents=[common], help="scaling benchmark, or fit slopes of a CSV")
    b.add_argument("mode", nargs="?", choices=["run", "fit"], default="run")
    b.add_argument("--family", choices=["comb", "random"], default="comb")
    b.add_argument("--sizes", type=_int_list, default=[32, 64, 128, 256])
    b.add_argument("--algos", type=_name_list, default=["fast", "baseline"])
    b.add_argument("--trials", type=int, default=1)
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--out", default=None)
    b.add_argument("--in", dest="input", default=None)

    v = commands.add_parser("verify", help="certify a hardness instance or decide containment")
    checks = v.add_subparsers(dest="action", required=True)
    c = checks.add_parser("reduction", parents=[common])
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--samples", type=int, default=1000)
    c.add_argument("--anchor-samples", type=int, default=100)
    c = checks.add_parser("containment", parents=[common])
    c.add_argument("P")
    c.add_argument("Q")
    c.add_argument("--algo", choices=ALGORITHMS, default="fast")

    z = commands.add_parser("viz", parents=[common], help="render P and Q + tau as SVG")
    z.add_argument("P")
    z.add_argument("Q")
    z.add_argument("--tau", nargs=2, default=["0", "0"])
    z.add_argument("--out", required=True)
    return parser


def run_config(args: argparse.Namespace) -> RunConfig:
    settings = get_settings()
    command = args.command
    action = getattr(args, "action", None)
    inputs: List[str] = []
    outputs: List[str] = []
    options: Dict[str, Any] = {}

    if hasattr(args, "P"):
        inputs = [args.P, args.Q]
    out = getattr(args, "out", None)
    if out:
        outputs = list(out) if isinstance(out, list) else [out]

    if command == "solve":
        if args.input and (args.P or args.Q):
            raise OverlapError("give P and Q either positionally or with --in, not both")
        inputs = list(args.input) if args.input else [p for p in (args.P, args.Q) if p]
        if len(inputs) != 2:
            raise OverlapError("solve needs two polygon files: P Q or --in P.poly Q.poly")
    elif command == "gen":
        if action == "random":
            options = {"n": args.n, "coord_range": args.coord_range}
        elif action == "comb":
            options = {"k": args.k, "spacing": args.spacing}
        elif action == "hardness":
            options = {"sets": args.sets, "variant": args.variant}
    elif command == "bench":
        action = args.mode
        if action == "fit":
            if not args.input:
                raise OverlapError("bench fit needs --in bench.csv")
            inputs = [args.input]
        options = {
            "family": args.family,
            "sizes": args.sizes,
            "algos": args.algos,
            "trials": args.trials,
            "workers": args.workers,
        }
    elif command == "verify" and action == "reduction":
        inputs = [args.input]
        options = {"samples": args.samples, "anchor_samples": args.anchor_samples}
    elif command == "viz":
        try:
            options = {"tau": (Fraction(args.tau[0]), Fraction(args.tau[1]))}
        except ValueError:
            raise OverlapError(f"--tau expects two rationals, got {args.tau}")

    return RunConfig(
        command=command,
        action=action,
        inputs=inputs,
        outputs=outputs,
        algo=getattr(args, "algo", "fast"),
        seed=settings.seed if args.seed is None else args.seed,
        brute_force_limit=settings.brute_force_limit if args.brute_limit is None else args.brute_limit,
        bench_budget_s=settings.bench_budget_s if args.budget is None else args.budget,
        check=getattr(args, "check", False),
        options=options,
    )


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        cfg = run_config(args)
        code, payload = COMMANDS[cfg.command](cfg)
    except OverlapError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        code, payload = exc.exit_code, exc.to_payload()
    except ValidationError as exc:
        code = EXIT_VALIDATION
        payload = {"status": "error", "error": "ValidationError", "message": str(exc)}
    except FileNotFoundError as exc:
        code = EXIT_FAILURE
        payload = {"status": "error", "error": "FileNotFoundError", "message": f"{exc.filename}: no such file"}
    print(to_json(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
