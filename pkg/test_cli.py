# test_cli.py
import json

import pytest

from cli import main
from core import validate_general_polygon, validate_polygon
from polyio import format_polygon, parse_polygon, read_polygon

UNIT = "ortho 4\n0 0\n1 0\n1 1\n0 1\n"
L_SHAPE = "# an L\northo 6\n0 0\n2 0\n2 1\n1 1\n1 2\n0 2\n"


def _run(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


@pytest.fixture
def polygons(tmp_path):
    unit = tmp_path / "unit.poly"
    unit.write_text(UNIT)
    l_shape = tmp_path / "l.poly"
    l_shape.write_text(L_SHAPE)
    return str(unit), str(l_shape)


def test_solve_unit_squares(capsys, polygons):
    unit, _ = polygons
    code, payload = _run(capsys, "solve", unit, unit)
    assert code == 0
    assert payload["status"] == "success"
    assert payload["area"] == 1
    assert payload["tau"] == [0, 0]


def test_solve_in_and_out_flags(capsys, tmp_path, polygons):
    unit, l_shape = polygons
    out = tmp_path / "result.json"
    code, payload = _run(capsys, "solve", "--algo", "fast", "--in", l_shape, unit, "--out", str(out), "--check")
    assert code == 0
    assert payload["out"] == str(out)
    written = json.loads(out.read_text())
    assert written["status"] == "success"
    assert written["area"] == payload["area"] == 1
    assert written["check"]["ok"] is True
    assert written["algo"] == "fast"


def test_solve_needs_both_polygons(capsys, polygons):
    code, payload = _run(capsys, "solve", polygons[0])
    assert code == 1
    assert payload["status"] == "error"
    code, payload = _run(capsys, "solve", polygons[0], "--in", *polygons)
    assert code == 1


@pytest.mark.parametrize("algo", ["fast", "baseline", "brute"])
def test_solve_with_check(capsys, polygons, algo):
    unit, l_shape = polygons
    code, payload = _run(capsys, "solve", l_shape, unit, "--algo", algo, "--check")
    assert code == 0
    assert payload["area"] == 1
    assert payload["check"]["ok"] is True


def test_diagonal_edge_reports_the_file_line(capsys, tmp_path, polygons):
    bad = tmp_path / "bad.poly"
    bad.write_text("ortho 3\n0 0\n1 0\n1 1\n")
    code, payload = _run(capsys, "solve", str(bad), polygons[0])
    assert code == 2
    assert payload["status"] == "error"
    assert payload["error"] == "NotClosedOrthogonal"
    assert payload["line"] == 4


def test_bad_header(capsys, tmp_path, polygons):
    bad = tmp_path / "bad.poly"
    bad.write_text("polygon 4\n0 0\n1 0\n1 1\n0 1\n")
    code, payload = _run(capsys, "solve", str(bad), polygons[0])
    assert code == 2
    assert payload["error"] == "ParseError"
    assert payload["line"] == 1


def test_missing_file(capsys, tmp_path, polygons):
    code, payload = _run(capsys, "solve", str(tmp_path / "nope.poly"), polygons[0])
    assert code == 1
    assert payload["error"] == "FileNotFoundError"


def test_brute_limit_exit_code(capsys, polygons):
    unit, l_shape = polygons
    code, payload = _run(capsys, "solve", l_shape, unit, "--algo", "brute", "--brute-limit", "2")
    assert code == 3
    assert payload["error"] == "InstanceTooLarge"


def test_gen_comb_then_solve(capsys, tmp_path):
    p, q = str(tmp_path / "p.poly"), str(tmp_path / "q.poly")
    code, payload = _run(capsys, "gen", "comb", "--k", "3", "--out", p, q)
    assert code == 0
    assert payload["vertices"] == {"P": 12, "Q": 12}
    assert payload["grid_x"] >= 9
    code, payload = _run(capsys, "solve", p, q, "--check")
    assert code == 0 and payload["check"]["ok"]


def test_gen_random_is_seeded(capsys, tmp_path):
    first, second = str(tmp_path / "a.poly"), str(tmp_path / "b.poly")
    _run(capsys, "gen", "random", "--n", "12", "--seed", "4", "--coord-range", "64", "--out", first)
    _run(capsys, "gen", "random", "--n", "12", "--seed", "4", "--coord-range", "64", "--out", second)
    with open(first) as a, open(second) as b:
        assert a.read() == b.read()


def test_gen_slabs(capsys, tmp_path, polygons):
    unit, l_shape = polygons
    out = str(tmp_path / "slabs.tsv")
    code, payload = _run(capsys, "gen", "slabs", l_shape, unit, "--out", out)
    assert code == 0
    with open(out) as handle:
        rows = handle.read().splitlines()
    assert rows[0].split("\t") == ["l", "r", "b", "A", "B", "C", "D"]
    assert len(rows) == payload["slab_count"] + 1


def test_hardness_round_trip(capsys, tmp_path):
    sets = tmp_path / "sets.json"
    sets.write_text(json.dumps({"A": [10], "B": [2], "C": [3], "D": [1], "E": [4]}))
    p, q, meta = (str(tmp_path / name) for name in ("P.poly", "Q.poly", "meta.json"))
    code, payload = _run(capsys, "gen", "hardness", "--sets", str(sets), "--out", p, q, meta)
    assert code == 0
    assert payload["meta"]["threshold"] == "10003/10000"
    assert read_polygon(p, "general").n == payload["meta"]["vertices"]["P"]

    code, payload = _run(
        capsys, "verify", "reduction", "--in", meta, "--samples", "10", "--anchor-samples", "4", "--seed", "1"
    )
    assert code == 0
    assert payload["files_match"] == {"P": True, "Q": True}
    assert payload["report"]["passed"] is True
    assert payload["report"]["sweep_verdict"] is True


def test_tampered_polygon_fails_verification(capsys, tmp_path):
    sets = tmp_path / "sets.json"
    sets.write_text(json.dumps({"A": [5], "B": [2], "C": [3]}))
    p, q, meta = (str(tmp_path / name) for name in ("P.poly", "Q.poly", "meta.json"))
    _run(capsys, "gen", "hardness", "--sets", str(sets), "--variant", "containment", "--out", p, q, meta)
    with open(q, "w") as handle:
        handle.write("general 3\n0 0\n1 0\n0 1\n")
    code, payload = _run(capsys, "verify", "reduction", "--in", meta)
    assert code == 1
    assert payload["files_match"]["Q"] is False


def test_verify_containment(capsys, polygons):
    unit, l_shape = polygons
    code, payload = _run(capsys, "verify", "containment", l_shape, unit)
    assert code == 0
    assert payload["contained"] is True
    code, payload = _run(capsys, "verify", "containment", unit, l_shape)
    assert payload["contained"] is False


def test_viz_is_deterministic(capsys, tmp_path, polygons):
    unit, l_shape = polygons
    first, second = str(tmp_path / "a.svg"), str(tmp_path / "b.svg")
    _run(capsys, "viz", l_shape, unit, "--tau", "1/2", "1/2", "--out", first)
    code, payload = _run(capsys, "viz", l_shape, unit, "--tau", "1/2", "1/2", "--out", second)
    assert code == 0
    assert payload["tau"] == ["1/2", "1/2"]
    with open(first) as a, open(second) as b:
        svg = a.read()
        assert svg == b.read()
    assert svg.startswith("<svg")
    assert svg.count("<path") == 3


def test_bench_run_and_fit(capsys, tmp_path):
    out = str(tmp_path / "bench.csv")
    code, payload = _run(
        capsys, "bench", "--family", "comb", "--sizes", "8,12,16", "--algos", "fast,baseline",
        "--budget", "600", "--out", out,
    )
    assert code == 0
    assert payload["records"] == 6
    assert "baseline:queries" in payload["slopes"]
    code, fitted = _run(capsys, "bench", "fit", "--in", out)
    assert code == 0
    assert fitted["records"] == 6
    assert fitted["slopes"]["baseline:queries"] == pytest.approx(payload["slopes"]["baseline:queries"])


def test_bench_fit_needs_input(capsys):
    code, payload = _run(capsys, "bench", "fit")
    assert code == 1
    assert payload["status"] == "error"


def test_polygon_text_round_trip():
    polygon = validate_polygon([(0, 0), (3, 0), (3, 2), (0, 2)])
    assert parse_polygon(format_polygon(polygon), "ortho") == polygon
    general = validate_general_polygon([(0, 0), ("3/2", 0), (0, "1/3")])
    assert parse_polygon(format_polygon(general), "general") == general
