from __future__ import annotations

import json
import subprocess
import sys

import pytest

from avdcolor.cli import main, report_hash
from avdcolor.generators import cycle
from avdcolor.io import parse_edge_list, serialize_edge_list


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def test_gen_prints_edge_list(capsys):
    code, out, _ = run(capsys, "gen", "cycle", "5")
    assert code == 0
    assert parse_edge_list(out) == cycle(5)


def test_exact_on_c5(capsys, tmp_path):
    f = tmp_path / "c5.txt"
    f.write_text(serialize_edge_list(cycle(5)))
    code, rep, err = run_json(capsys, "exact", "--input", str(f))
    assert code == 0
    assert {k: rep[k] for k in ("n", "m", "delta", "chi_avd", "status")} == {
        "n": 5, "m": 5, "delta": 2, "chi_avd": 5, "status": "ok"
    }
    assert rep["graph"] == str(f)
    assert "chi_avd=5" in err


def test_exact_budget_reported(capsys):
    code, rep, _ = run_json(capsys, "exact", "--family", "complete", "6", "--node-budget", "5")
    assert code == 0
    assert rep["status"] == "budget_exhausted" and rep["chi_avd"] is None


def test_color_k2_fails_with_error_json(capsys):
    code, rep, _ = run_json(capsys, "color", "--family", "path", "2")
    assert code != 0
    assert rep["error"] == "IsolatedEdgePresent"


def test_color_then_verify(capsys, tmp_path):
    col = tmp_path / "col.json"
    code, rep, _ = run_json(
        capsys, "color", "--family", "gnp", "50", "0.4", "2", "--seed", "4", "--coloring-out", str(col)
    )
    assert code == 0
    assert rep["verified"] == {"proper": True, "avd": True}
    assert rep["coloring"]["colors"]
    code, ver, _ = run_json(capsys, "verify", "--family", "gnp", "50", "0.4", "2", "--coloring", str(col))
    assert code == 0 and ver["avd"]


def test_color_param_overrides(capsys):
    code, rep, _ = run_json(
        capsys, "color", "--family", "cycle", "5", "--params", "palette_size=5", "max_attempts=3"
    )
    assert code == 0
    assert rep["params"]["palette_size"] == 5 and rep["params"]["max_attempts"] == 3
    assert max(rep["coloring"]["colors"]) <= 5
    assert rep.get("warnings") == ["FallbackUsed"]


def test_color_bad_param(capsys):
    code, rep, _ = run_json(capsys, "color", "--family", "cycle", "5", "--params", "bogus=1")
    assert code != 0 and rep["error"] == "KeyError"
    code, rep, _ = run_json(capsys, "color", "--family", "cycle", "5", "--params", "noequals")
    assert code != 0 and rep["error"] == "ValueError"


def test_verify_tampered(capsys, tmp_path):
    g = tmp_path / "c4.txt"
    g.write_text("4 4\n0 1\n1 2\n2 3\n3 0\n")
    col = tmp_path / "col.json"
    col.write_text(json.dumps({"k": 2, "colors": [1, 2, 1, 2]}))
    code, rep, _ = run_json(capsys, "verify", "--input", str(g), "--coloring", str(col))
    assert code != 0
    assert rep["proper"] and not rep["avd"]
    assert [0, 1] in rep["indistinguishable_pairs"]


def test_verify_improper(capsys, tmp_path):
    g = tmp_path / "p3.txt"
    g.write_text("3 2\n0 1\n1 2\n")
    col = tmp_path / "col.json"
    col.write_text(json.dumps({"k": 2, "colors": [1, 1]}))
    code, rep, _ = run_json(capsys, "verify", "--input", str(g), "--coloring", str(col))
    assert code != 0 and rep["conflicts"] == [[0, 1]]


def test_parse_error_json(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("3 2\n0 1\n0 3\n")
    code, rep, _ = run_json(capsys, "exact", "--input", str(f))
    assert code != 0 and rep["error"] == "IndexOutOfRange"
    code, rep, _ = run_json(capsys, "exact", "--input", str(tmp_path / "missing.txt"))
    assert code != 0 and rep["error"] == "FileNotFoundError"


def test_bounds_command(capsys):
    code, rep, _ = run_json(capsys, "bounds")
    assert code == 0
    assert rep["lll"]["exact"] == "96/125" and rep["lll"]["satisfied"]
    assert rep["repair"]["worst_value"] < 1
    for entry in rep["membership_tails"].values():
        assert entry["value"] <= entry["ceiling"]


def test_mc_command(capsys):
    code, rep, _ = run_json(capsys, "mc", "--family", "regular", "60", "12", "1", "--trials", "10")
    assert code == 0
    assert {e["event"] for e in rep["events"]} >= {"R", "Q", "T", "L", "collision"}
    assert rep["violations"] == []
    code, rep, _ = run_json(capsys, "mc", "--binomial", "--trials", "10000")
    assert code == 0 and rep["violations"] == []


def test_out_file(capsys, tmp_path):
    out = tmp_path / "rep.json"
    code, stdout, _ = run(capsys, "exact", "--family", "cycle", "6", "--out", str(out))
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text())["chi_avd"] == 3


def test_reports_identical_modulo_timestamp(capsys):
    argv = ["color", "--family", "gnp", "40", "0.5", "3", "--seed", "11"]
    _, a, _ = run_json(capsys, *argv)
    _, b, _ = run_json(capsys, *argv)
    assert a["report_hash"] == b["report_hash"] == report_hash(a)
    a.pop("timestamp"), b.pop("timestamp")
    assert a == b


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "avdcolor", "exact", "--family", "cycle", "5"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["chi_avd"] == 5


def test_unknown_command_exits_nonzero(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code != 0
