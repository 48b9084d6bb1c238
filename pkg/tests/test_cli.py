import json
import subprocess
import sys

import pytest

from paireddom import solver
from paireddom.bench import bench_aggregate, run_bench, solve_report
from paireddom.cli import main
from paireddom.coloring import DesirableSet
from paireddom.graph import emit_edge_list, emit_graph6, h8, parse_graph6, petersen
from paireddom.solver import solve


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, g in (("h8", h8()), ("petersen", petersen())):
        p = tmp_path / f"{name}.g6"
        p.write_text(emit_graph6(g) + "\n")
        paths[name] = str(p)
    p = tmp_path / "h8.edges"
    p.write_text(emit_edge_list(h8()))
    paths["h8_edges"] = str(p)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_json(files, capsys):
    code, out, _ = run(capsys, "solve", files["h8"], "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["size"] == 4 and rep["ratio"] == "1/2" and rep["bound_ok"] is True
    assert rep["schema_version"] == 1 and rep["mode"] == "solve"
    assert "wall_time" not in rep


def test_solve_trace_and_edges_format(files, capsys):
    code, out, _ = run(capsys, "solve", files["h8_edges"], "--json", "--trace")
    rep = json.loads(out)
    assert [t["rule"] for t in rep["trace"]] == ["R2", "R10"]
    assert rep["trace"][-1]["weight_after"] == 0
    code, out, _ = run(capsys, "solve", files["h8"], "--trace")
    assert code == 0 and "R10" in out and "ratio=1/2" in out


def test_timing_opt_in(files, capsys):
    _, out, _ = run(capsys, "solve", files["h8"], "--json", "--timing")
    assert "wall_time" in json.loads(out)


def test_exact(files, capsys):
    code, out, _ = run(capsys, "exact", files["petersen"], "--json")
    assert code == 0 and json.loads(out)["gamma_pr"] == 6


def test_exact_too_large(tmp_path, capsys):
    from paireddom.graph import random_regular

    p = tmp_path / "big.g6"
    p.write_text(emit_graph6(random_regular(20, 4, 1)))
    code, _, err = run(capsys, "exact", str(p), "--max-n", "12")
    assert code == 1 and "TooLarge" in err


def test_verify(files, capsys):
    code, out, _ = run(capsys, "verify", files["h8"], "--set", "1,3,5,7", "--pairs", "1-5,3-7")
    assert code == 0 and out.strip().endswith("valid=true")
    code, out, _ = run(capsys, "verify", files["h8"], "--set", "0,1", "--json")
    assert code == 0 and json.loads(out)["valid"] is False


def test_bad_pairs(files, capsys):
    code, _, err = run(capsys, "verify", files["h8"], "--set", "1,3", "--pairs", "1:3")
    assert code == 1 and "MalformedInput" in err


def test_min_degree_exit_1(files, capsys):
    code, out, err = run(capsys, "solve", files["petersen"])
    assert code == 1 and "MinDegreeViolation" in err and out == ""


def test_malformed_exit_1(tmp_path, capsys):
    p = tmp_path / "bad.g6"
    p.write_text("D~\n")
    code, _, err = run(capsys, "solve", str(p))
    assert code == 1 and "MalformedInput" in err


def test_missing_file_exit_1(tmp_path, capsys):
    code, _, _ = run(capsys, "solve", str(tmp_path / "nope.g6"))
    assert code == 1


def test_certificate_failure_exit_2(files, tmp_path, capsys, monkeypatch):
    # a rule that overclaims forces the re-measurement to fail
    def bogus(state):
        return DesirableSet((0, 1), ((0, 1),), "R2", 999)

    monkeypatch.setattr(solver, "find_desirable", bogus)
    code, _, err = run(capsys, "--dump-dir", str(tmp_path), "solve", files["h8"])
    assert code == 2 and "CertificateError" in err
    dump = json.loads((tmp_path / "paireddom-dump-solve.json").read_text())
    assert dump["dump"]["measured_xi"] == 414


def test_gen(tmp_path, capsys):
    out_file = tmp_path / "g.g6"
    code, _, _ = run(capsys, "gen", "random_regular", "--n", "12", "--d", "4",
                     "--seed", "3", "--out", str(out_file))
    assert code == 0
    g = parse_graph6(out_file.read_text().strip())
    assert g.n == 12 and set(g.degrees()) == {4}
    code, out, _ = run(capsys, "gen", "h8")
    assert parse_graph6(out.strip()) == h8()
    code, _, err = run(capsys, "gen", "random_regular", "--n", "7", "--d", "3")
    assert code == 1


def test_seed_env(monkeypatch, capsys):
    monkeypatch.setenv("PAIREDDOM_SEED", "5")
    _, a, _ = run(capsys, "gen", "random_mindeg", "--n", "12", "--d", "4", "--p", "0.1")
    _, b, _ = run(capsys, "gen", "random_mindeg", "--n", "12", "--d", "4", "--p", "0.1",
                  "--seed", "5")
    assert a == b
    monkeypatch.setenv("PAIREDDOM_SEED", "x")
    code, _, err = run(capsys, "bench", "--count", "2")
    assert code == 1 and "PAIREDDOM_SEED" in err


def test_multi_line_graph6(tmp_path, capsys):
    p = tmp_path / "two.g6"
    p.write_text(emit_graph6(h8()) + "\n" + emit_graph6(h8()) + "\n")
    code, out, _ = run(capsys, "solve", str(p), "--json")
    reps = [json.loads(ln) for ln in out.splitlines()]
    assert code == 0 and [r["instance"] for r in reps] == ["two.g6:1", "two.g6:2"]


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--count", "20", "--n-min", "10", "--n-max", "16",
                       "--seed", "1", "--json")
    lines = [json.loads(ln) for ln in out.splitlines()]
    summary = lines[-1]
    assert code == 0
    assert summary["mode"] == "bench-summary" and summary["instances"] == 20
    assert summary["oracle_checked"] > 0 and summary["oracle_mismatches"] == 0
    assert summary["failures"] == 0


def test_reports_byte_identical(files):
    cmd = [sys.executable, "-m", "paireddom", "solve", files["h8"], "--json", "--trace"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
    bench = [sys.executable, "-m", "paireddom", "bench", "--count", "6", "--seed", "2", "--json"]
    assert subprocess.run(bench, capture_output=True).stdout == subprocess.run(
        bench, capture_output=True).stdout


def test_parallel_bench_matches_serial():
    assert run_bench(8, 10, 20, 4, workers=2) == run_bench(8, 10, 20, 4, workers=1)


class TestAggregate:
    def test_single_h8(self):
        rep = solve_report("h8", h8(), solve(h8()))
        s = bench_aggregate([rep])
        assert s["max_ratio"] == "1/2"
        assert {k: v for k, v in s["rule_histogram"].items() if v} == {"R2": 1, "R10": 1}
        assert s["failures"] == 0 and s["oracle_mismatches"] == 0

    def test_empty(self):
        with pytest.raises(ValueError):
            bench_aggregate([])

    def test_counts_failures(self):
        rep = solve_report("h8", h8(), solve(h8()))
        s = bench_aggregate([rep, {"error": "ProofGap"}])
        assert s["failures"] == 1 and s["failure_kinds"] == {"ProofGap": 1}

    def test_hundred_instances(self):
        s = bench_aggregate(run_bench(100, 10, 14, 7))
        assert s["oracle_checked"] == 100 and s["oracle_mismatches"] == 0
        assert s["failures"] == 0
