import csv
import json
import subprocess
import sys

import pytest

import csneighborly.cli as cli
from csneighborly.cli import EXIT_CLAIM, EXIT_CONFIG, EXIT_OK, EXIT_SOLVER, main, talata_baseline
from csneighborly.lp import SolverError


def run_cli(tmp_path, *args, name="r.json"):
    path = tmp_path / name
    code = main(list(args) + ["--out", str(path), "--no-timing"])
    return code, json.loads(path.read_text()), path


def claim(report, name):
    return next(c for c in report["claims"] if c["name"] == name)


def test_report_schema(tmp_path):
    code, rep, _ = run_cli(tmp_path, "theorem-2neighb", "--m", "2")
    assert code == EXIT_OK and rep["status"] == "certified"
    assert {"tool", "command", "config", "construction", "claims", "timing"} <= set(rep)
    assert rep["tool"]["version"] and rep["timing"] is None
    assert {"N", "ambient_dim", "affine_dim"} <= set(rep["construction"])
    for c in rep["claims"]:
        assert set(c) >= {"name", "paper_ref", "predicted", "observed", "status", "min_margin"}
        assert c["status"] in {"pass", "fail", "reported", "flagged"}
    assert claim(rep, "edge count")["observed"] == 112
    assert rep["config"]["m"] == 2 and "workers" not in rep["config"]


def test_timing_present_by_default(tmp_path):
    path = tmp_path / "t.json"
    assert main(["antipodal", "--m", "1", "--out", str(path)]) == EXIT_OK
    assert json.loads(path.read_text())["timing"]["total_seconds"] >= 0


def test_reports_identical_across_workers(tmp_path):
    texts = []
    for w in (1, 4, 8):
        path = tmp_path / f"w{w}.json"
        assert main(["theorem-2neighb", "--m", "2", "--s", "2", "--workers", str(w),
                     "--out", str(path), "--no-timing"]) == EXIT_OK
        texts.append(path.read_bytes())
    assert texts[0] == texts[1] == texts[2]


def test_m1_below_hypothesis_is_flagged(tmp_path):
    code, rep, _ = run_cli(tmp_path, "theorem-2neighb", "--m", "1")
    assert code == EXIT_OK
    dim = claim(rep, "dimension")
    assert dim["status"] == "flagged" and dim["observed"] == 2
    code, rep, _ = run_cli(tmp_path, "antipodal", "--m", "1", name="a.json")
    assert code == EXIT_OK
    assert claim(rep, "affinely spanning")["status"] == "flagged"


def test_antipodal_report(tmp_path):
    code, rep, _ = run_cli(tmp_path, "antipodal", "--m", "2", "--s", "2")
    assert code == EXIT_OK
    assert claim(rep, "all pairs strictly antipodal")["observed"] == 28
    assert claim(rep, "beats earlier baseline")["predicted"] == 3
    assert claim(rep, "clustered pairs across clusters")["observed"] == 112


def test_talata_baseline():
    assert talata_baseline(6) == 3
    assert talata_baseline(3) == 1


def test_config_errors_exit_4(tmp_path, capsys):
    assert main(["theorem-2neighb", "--m", "0"]) == EXIT_CONFIG
    assert main(["theorem-kneighb", "--k", "3"]) == EXIT_CONFIG
    assert main(["theorem-2neighb", "--m", "2", "--tol-face", "-1"]) == EXIT_CONFIG
    assert "error" in capsys.readouterr().err
    code, rep, _ = run_cli(tmp_path, "theorem-2neighb", "--m", "3", "--cap", "10")
    assert code == EXIT_CONFIG and rep["error"]["type"] == "EnumerationCapError"


def test_imported_bad_family_reports_witness(tmp_path, capsys):
    fam = tmp_path / "bad.json"
    fam.write_text(json.dumps({"m": 4, "members": [0b0011, 0b0101, 0b0001]}))
    code, rep, _ = run_cli(tmp_path, "family", "--k", "2", "--import", str(fam))
    assert code == EXIT_CLAIM
    c = claim(rep, "family k-independent")
    assert c["status"] == "fail" and c["witness"]
    assert "witness" in capsys.readouterr().err


def test_family_export_and_reimport(tmp_path):
    fam = tmp_path / "fam.json"
    code, rep, _ = run_cli(tmp_path, "family", "--m", "8", "--k", "3", "--strategy", "exhaustive",
                           "--family-out", str(fam))
    assert code == EXIT_OK and rep["family"]["size"] == 4
    code, rep, _ = run_cli(tmp_path, "theorem-kneighb", "--k", "3", "--family", str(fam), "--target", "3",
                           name="k.json")
    assert code == EXIT_OK
    assert claim(rep, "vertex count")["observed"] == 8  # imported families are not truncated


def test_kneighb_target(tmp_path):
    code, rep, _ = run_cli(tmp_path, "theorem-kneighb", "--k", "3", "--m", "8", "--target", "3")
    assert code == EXIT_OK
    assert claim(rep, "3-subsets are faces")["observed"] == 8
    assert claim(rep, "2-subsets are faces")["observed"] == 12
    assert claim(rep, "dimension bound")["observed"] <= 38


def test_unreachable_search_exit_4(tmp_path):
    code, rep, _ = run_cli(tmp_path, "family", "--m", "3", "--k", "3", "--target", "5")
    assert code == EXIT_CONFIG


def test_solver_failure_exit_3(tmp_path, monkeypatch):
    def boom(*a, **kw):
        raise SolverError("injected")

    monkeypatch.setattr(cli, "count_edges", boom)
    code, rep, _ = run_cli(tmp_path, "theorem-2neighb", "--m", "2")
    assert code == EXIT_SOLVER and rep["error"]["kind"] == "solver"


def test_forced_tolerance_gives_claim_failure(tmp_path):
    code, rep, _ = run_cli(tmp_path, "theorem-2neighb", "--m", "2", "--tol-face", "10")
    assert code == EXIT_CLAIM and rep["status"] == "claim failure"


def test_csv_outputs(tmp_path):
    v, r = tmp_path / "v.csv", tmp_path / "r.csv"
    code, _, _ = run_cli(tmp_path, "theorem-2neighb", "--m", "2", "--vertices-csv", str(v), "--refusals-csv", str(r))
    assert code == EXIT_OK
    assert len(list(csv.reader(v.open()))) == 17
    rows = list(csv.DictReader(r.open()))
    assert len(rows) == 8 and rows[0]["subset"] == "0 8"


def test_module_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "csneighborly", "antipodal", "--m", "1", "--no-timing"],
                         capture_output=True, text=True, timeout=120)
    assert out.returncode == 0
    assert json.loads(out.stdout)["command"] == "antipodal"
