import json

import numpy as np
import pytest

from cvgme.cli import main
from cvgme.criteria import published_params
from cvgme.linalg import CovarianceMatrix
from cvgme.states import ghz_cm

FAST = ["--restarts", "2", "--candidates", "128", "--max-iters", "400", "--rounds", "1"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_state_json(capsys):
    code, out, _ = run(capsys, "state", "ghz", "--r", "0.5")
    assert code == 0
    assert CovarianceMatrix.from_json(out) == ghz_cm(0.5)
    code, out, _ = run(capsys, "state", "ghz", "--dB", "-5.646", "--modes", "4", "--eta", "0.9")
    assert code == 0 and CovarianceMatrix.from_json(out).modes == 4
    code, out, _ = run(capsys, "state", "gamma7")
    assert code == 0


def test_state_usage_errors(capsys):
    assert run(capsys, "state", "ghz")[0] == 2
    assert run(capsys, "state", "gamma1", "--r", "0.3")[0] == 2
    assert run(capsys, "state", "ghz", "--r", "0.3", "--dB", "3")[0] == 2
    assert run(capsys, "state", "nope")[0] == 2
    assert run(capsys, "state", "ghz", "--r", "-1")[0] == 2
    assert run(capsys)[0] == 2


def test_detect_from_file_and_key(capsys, tmp_path):
    path = tmp_path / "ghz.json"
    path.write_text(ghz_cm(1.0).to_json())
    code, out, _ = run(capsys, "detect", "--cm", str(path), "--criterion", "product", *FAST)
    assert code == 0
    res = json.loads(out)
    assert res["detected"] and res["best_value"] < 0
    code, out, _ = run(capsys, "detect", "--cm", "gamma4a", "--tree", "4a", "--criterion", "sum", "--box", "10", *FAST)
    assert code == 0 and json.loads(out)["criterion"] == "sum"


def test_detect_dimension_mismatch(capsys):
    code, _, err = run(capsys, "detect", "--cm", "gamma4a", "--tree", "3", *FAST)
    assert code == 2 and "modes" in err


def test_scan_csv(capsys, tmp_path):
    out_file = tmp_path / "scan.csv"
    code, _, _ = run(capsys, "scan", "--family", "ghz", "--r-grid", "0", "0.5", "0.25", "-o", str(out_file), *FAST)
    assert code == 0
    lines = out_file.read_text().splitlines()
    assert lines[0] == "# cvgme-scan v1"
    assert lines[1] == "r,dB,best_value,detected"
    rows = [line.split(",") for line in lines[2:]]
    assert [float(r[0]) for r in rows] == [0.0, 0.25, 0.5]
    assert rows[0][3] == "0" and rows[2][3] == "1"


def test_scan_db_grid_and_bad_step(capsys):
    code, out, _ = run(capsys, "scan", "--family", "ghz", "--dB-grid", "0", "-4", "-2", "--no-warm", *FAST)
    assert code == 0 and len(out.splitlines()) == 5
    assert run(capsys, "scan", "--family", "ghz", "--r-grid", "0", "1", "-0.1", *FAST)[0] == 2


def test_loss_threshold_csv(capsys):
    code, out, _ = run(
        capsys, "loss-threshold", "--family", "ghz", "--r", "1.0", "--eta-tol", "0.1", *FAST
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# cvgme-loss-threshold v1"
    assert lines[1] == "kind,eta,best_value,detected"
    assert lines[2].startswith("probe,1.0,")
    assert lines[-1].startswith("threshold,")
    code, _, err = run(capsys, "loss-threshold", "--cm", "gamma2", "--criterion", "product", *FAST)
    assert code == 2 and "not detected" in err


def test_witness_commands(capsys, tmp_path):
    params = tmp_path / "params.json"
    params.write_text(published_params("witness3_guess").to_json())
    code, out, _ = run(capsys, "witness", "build", "--params", str(params))
    assert code == 0
    wfile = tmp_path / "w.json"
    wfile.write_text(out)
    code, out, _ = run(capsys, "witness", "diagonalize", "--witness", str(wfile))
    assert code == 0
    data = json.loads(out)
    assert data["trace"] < 1 and data["cm"]["modes"] == 3
    code, out, _ = run(capsys, "witness", "detect", "--cm", "gamma3", "--witness", "3")
    assert code == 0 and json.loads(out)["detected"]


def test_witness_diagonalize_infeasible(capsys, tmp_path):
    wfile = tmp_path / "w.json"
    wfile.write_text(json.dumps({"x": (np.eye(3) / 6).tolist(), "p": (np.eye(3) / 6).tolist(), "normalization": 6.0}))
    code, out, _ = run(capsys, "witness", "diagonalize", "--witness", str(wfile))
    assert code == 1 and json.loads(out)["cm"] is None


def test_tree_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "tree", "enumerate", "--order", "6", "--format", "json")
    assert code == 0 and len(json.loads(out)) == 6
    code, out, _ = run(capsys, "tree", "enumerate", "--order", "4")
    assert code == 0 and out.count("# tree") == 2
    assert run(capsys, "tree", "enumerate", "--order", "13")[0] == 2

    edges = tmp_path / "edges.txt"
    edges.write_text("1 2\n2 3\n2 4\n2 5\n5 6\n5 7\n")
    code, out, _ = run(capsys, "tree", "label", "--edges", str(edges), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["labels"]["5"] == 7 and data["labels"]["2"] == 6
    assert run(capsys, "tree", "label", "--edges", str(edges), "--root", "1")[0] == 2
    assert run(capsys, "tree", "label", "--edges", str(edges), "--root", "2")[0] == 0

    good = tmp_path / "good.txt"
    good.write_text("3 4\n4 2\n2 1\n")
    assert run(capsys, "tree", "validate", "--tree", str(good))[0] == 0
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\n1 3\n1 4\n")
    code, out, _ = run(capsys, "tree", "validate", "--tree", str(bad))
    assert code == 1 and "column 1" in out
    assert run(capsys, "tree", "validate", "--tree", "6d")[0] == 0


def test_criterion_print(capsys):
    code, out, _ = run(capsys, "criterion-print", "3", "--format", "latex")
    assert code == 0 and r"\mathcal{K}^{(1|23)}" in out
    assert run(capsys, "criterion-print", "3", "--format", "pdf")[0] == 2


def test_reproduce_commands(capsys):
    code, out, _ = run(capsys, "reproduce", "--list")
    assert code == 0 and "table2/6f" in out
    code, out, _ = run(capsys, "reproduce", "table5/gamma1-dp", "appA/")
    assert code == 0 and out.count("PASS") == 4
    code, out, _ = run(capsys, "reproduce", "table10/gamma4a-ds")
    assert code == 1 and "failed: table10/gamma4a-ds" in out
    assert run(capsys, "reproduce", "nope/none")[0] == 2
    assert run(capsys, "reproduce")[0] == 2
