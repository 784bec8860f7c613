from __future__ import annotations

import json
import subprocess
import sys

from symcoh.cli import main


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cohomology_su2_text(capsys):
    code, out, err = run(capsys, ["cohomology", "--group", "SU(2)"])
    assert code == 0 and err == ""
    assert "group: SU(2)" in out
    assert "betti: (1, 0, 0, 1)" in out
    assert "differential ranks: (0, 3, 0, 0)" in out


def test_cohomology_json_document(capsys):
    code, out, _err = run(capsys, ["cohomology", "--group", "SU(2)",
                                   "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "cohomology"
    assert doc["betti"] == [1, 0, 0, 1]
    assert doc["differential_ranks"] == [0, 3, 0, 0]


def test_ncz_sl2r_reports_first_failure(capsys):
    code, out, _err = run(capsys, ["ncz", "--group", "SL(2,R)"])
    assert code == 0
    assert "overall: False" in out
    assert "first failing degree: 2" in out
    assert "odd-generation path: False" in out


def test_relative_sl2r(capsys):
    code, out, _err = run(capsys, ["relative", "--group", "SL(2,R)",
                                   "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["relative_betti"] == [1, 0, 1]
    assert doc["k_dim"] == 1


def test_chern_weil_sl2r_euler_class(capsys):
    code, out, _err = run(capsys, ["chern-weil", "--group", "SL(2,R)"])
    assert code == 0
    assert "E_1: cochain degree 2, class ['-1'] (nonzero)" in out


def test_epsilon_sl4r_kernel_golden(capsys):
    code, out, _err = run(capsys, ["epsilon", "--group", "SL(4,R)",
                                   "--max-degree", "4", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["epsilon"]["4"] == {
        "rank": 1,
        "nonzero_monomials": ["E_2"],
        "kernel_combinations": ["P_1"],
    }
    assert doc["epsilon"]["3"] == {"rank": 0, "nonzero_monomials": [],
                                   "hopf": True}


def test_report_text_contains_ladder(capsys):
    code, out, _err = run(capsys, ["report", "--group", "SL(2,R)",
                                   "--max-degree", "2"])
    assert code == 0
    assert "0 -> R^1/Z^1 -> H^2 -> 0 -> 0" in out


def test_usage_errors_exit_one(capsys):
    code, _out, err = run(capsys, [])
    assert code == 1 and "usage error" in err
    code, _out, err = run(capsys, ["cohomology"])
    assert code == 1 and "input source is required" in err
    code, _out, err = run(capsys, ["cohomology", "--group", "SU(2)",
                                   "--algebra", "x.json"])
    assert code == 1 and "exactly one input source" in err
    code, _out, err = run(capsys, ["cohomology", "--group", "SU(2)",
                                   "--max-exterior-dim", "0"])
    assert code == 1 and "must be positive" in err


def test_validation_errors_exit_two(capsys):
    code, _out, err = run(capsys, ["cohomology", "--group", "SO(2)"])
    assert code == 2
    assert "error:" in err
    code, out, err = run(capsys, ["cohomology", "--group", "SO(2)",
                                  "--format", "json"])
    assert code == 2 and err == ""
    doc = json.loads(out)
    assert doc["error"]["type"] == "UnknownGroup"


def test_malformed_json_file_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out, _err = run(capsys, ["cohomology", "--algebra", str(bad),
                                   "--format", "json"])
    assert code == 2
    assert json.loads(out)["error"]["type"] == "ValidationFailure"
    code, _out, err = run(capsys, ["cohomology", "--algebra",
                                   str(tmp_path / "missing.json")])
    assert code == 1 and "cannot read" in err


def test_env_guard(monkeypatch, capsys):
    monkeypatch.setenv("SYMCOH_MAX_EXTERIOR_DIM", "2")
    code, _out, err = run(capsys, ["cohomology", "--group", "SU(2)"])
    assert code == 2 and "exceeds the guard" in err
    monkeypatch.setenv("SYMCOH_MAX_EXTERIOR_DIM", "abc")
    code, _out, err = run(capsys, ["cohomology", "--group", "SU(2)"])
    assert code == 1 and "must be an integer" in err


def test_dual_round_trips_as_input(tmp_path, capsys):
    code, out, _err = run(capsys, ["dual", "--group", "SL(2,R)",
                                   "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["dual_name_hint"] == "SU(2)"
    apath = tmp_path / "algebra.json"
    dpath = tmp_path / "dec.json"
    apath.write_text(json.dumps(doc["algebra"]))
    dpath.write_text(json.dumps(doc["decomposition"]))
    code, out, _err = run(capsys, ["relative", "--algebra", str(apath),
                                   "--decomposition", str(dpath),
                                   "--format", "json"])
    assert code == 0
    assert json.loads(out)["relative_betti"] == [1, 0, 1]


def test_output_is_deterministic(capsys):
    first = run(capsys, ["epsilon", "--group", "SL(2,R)", "--format", "json"])
    second = run(capsys, ["epsilon", "--group", "SL(2,R)", "--format", "json"])
    assert first == second


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "symcoh.cli", "crosscheck", "--group", "SU(2)"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "crosscheck: PASS" in proc.stdout
