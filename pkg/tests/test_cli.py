"""Command line interface: JSON output, CSV artifacts, exit codes."""
from __future__ import annotations

import json
import os

import numpy as np
import pytest

from shockfronts.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _write_cfg(tmp_path, name, cfg):
    path = tmp_path / name
    path.write_text(json.dumps(cfg), encoding="utf-8")
    return str(path)


def test_analyze_default_model(capsys):
    code, out, _ = _run(capsys, "analyze")
    assert code == 0
    doc = json.loads(out)
    assert doc["regime"] == "ShockFamily"
    assert doc["alpha"] == pytest.approx(5.0 / 9.0, abs=1e-12)
    assert doc["P_values"]["P1"] == pytest.approx(8.0, abs=1e-10)


def test_analyze_rejects_broken_structure(capsys, tmp_path):
    cfg = _write_cfg(tmp_path, "mono.json",
                     {"type": "custom", "P_poly": [0.0, 1.0],
                      "g_poly": [0.0, -0.5, 1.5, -1.0]})
    code, _, err = _run(capsys, "analyze", "--model", cfg)
    assert code == 2
    assert "sign" in err


def test_analyze_rejects_bad_bio_params(capsys, tmp_path):
    cfg = _write_cfg(tmp_path, "bad.json",
                     {"type": "bio", "Di": 20.0, "Dg": 5.0, "ki": 2.5,
                      "lambdai": 0.5, "lambdag": 1.0})
    code, _, err = _run(capsys, "analyze", "--model", cfg)
    assert code == 2
    assert "Di > 4 Dg" in err


def test_admissible_writes_csv(capsys, tmp_path):
    out_dir = str(tmp_path / "adm")
    code, out, _ = _run(capsys, "admissible", "--out", out_dir,
                        "--json", "--plot", "--table-n", "32")
    assert code == 0
    doc = json.loads(out)
    assert doc["I"][0] == pytest.approx(4.0 / 9.0, abs=1e-9)
    lines = open(os.path.join(out_dir, "admissible.csv")).read().split("\n")
    assert lines[0] == "phi_l,phi_r,P_value"
    assert len([l for l in lines if l]) == 33
    assert os.path.exists(os.path.join(out_dir, "admissible.gp"))


def test_speed_json_fields(capsys):
    code, out, _ = _run(capsys, "speed", "--phi-l", "0.5")
    assert code == 0
    doc = json.loads(out)
    assert doc["c_star"] == pytest.approx(-1.6098091281, abs=1e-8)
    assert doc["phi_r"] == pytest.approx(0.877293769304329, abs=1e-9)
    assert abs(doc["F_residual"]) <= 1e-8


def test_sweep_csv_monotone_and_deterministic(capsys, tmp_path):
    d1, d2 = str(tmp_path / "a"), str(tmp_path / "b")
    code1, _, _ = _run(capsys, "sweep", "--sweep-n", "5", "--out", d1)
    code2, _, _ = _run(capsys, "sweep", "--sweep-n", "5", "--out", d2)
    assert code1 == code2 == 0
    b1 = open(os.path.join(d1, "sweep.csv"), "rb").read()
    b2 = open(os.path.join(d2, "sweep.csv"), "rb").read()
    assert b1 == b2
    rows = np.genfromtxt(os.path.join(d1, "sweep.csv"), delimiter=",",
                         names=True)
    assert rows.shape == (5,)
    assert np.all(np.diff(rows["c_star"]) < 0)


def test_sweep_n_below_two_rejected(capsys):
    code, _, err = _run(capsys, "sweep", "--sweep-n", "1")
    assert code == 2
    assert "sweep-n" in err


def test_profile_artifacts(capsys, tmp_path):
    out_dir = str(tmp_path / "prof")
    code, out, _ = _run(capsys, "profile", "--out", out_dir, "--json",
                        "--plot", "--svg")
    assert code == 0
    doc = json.loads(out)
    assert doc["weak_check"]["sup_residual"] <= 1e-4
    assert doc["weak_check"]["monotonicity_violations"] == 0
    for name in ("profile.csv", "profile_plot.csv", "profile.gp",
                 "profile.svg"):
        assert os.path.exists(os.path.join(out_dir, name)), name
    head = open(os.path.join(out_dir, "profile.csv")).readline().strip()
    assert head == "xi,phi,z,lambda"
    # plot file keeps the two bands as separate gnuplot blocks
    body = open(os.path.join(out_dir, "profile_plot.csv")).read()
    assert "\n\n" in body


def test_bio_summary(capsys):
    code, out, _ = _run(capsys, "bio")
    assert code == 0
    doc = json.loads(out)
    assert doc["omega"] == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert doc["speed_interval"][0] == pytest.approx(-2 * np.sqrt(70), abs=1e-9)


def test_bio_needs_bio_config(capsys, tmp_path):
    cfg = _write_cfg(tmp_path, "cust.json",
                     {"type": "custom",
                      "P_poly": [0.0, 0.1875, -0.5, 1.0 / 3.0],
                      "g_poly": [0.0, -0.5, 1.5, -1.0]})
    code, _, err = _run(capsys, "bio", "--model", cfg)
    assert code == 2


def test_verify_surfaces_param_error_as_report(capsys, tmp_path):
    cfg = _write_cfg(tmp_path, "bad.json",
                     {"type": "bio", "Di": 20.0, "Dg": 5.0, "ki": 2.5,
                      "lambdai": 0.5, "lambdag": 1.0})
    code, out, err = _run(capsys, "verify", "--model", cfg)
    assert code == 1
    doc = json.loads(out)
    assert doc["passed"] is False
    assert doc["checks"][0]["name"] == "model.load"
    assert "model.load" in err


def test_speed_plot_emits_z_field(capsys, tmp_path):
    out_dir = str(tmp_path / "z")
    code, _, _ = _run(capsys, "speed", "--phi-l", "0.5", "--out", out_dir,
                      "--plot")
    assert code == 0
    body = open(os.path.join(out_dir, "zfield.csv")).read()
    assert body.startswith("phi,z\n")
    assert "\n\n" in body
    assert os.path.exists(os.path.join(out_dir, "zfield.gp"))
