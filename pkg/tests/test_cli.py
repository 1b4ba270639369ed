import json

import pytest

from depoflux.cli import main


def run_cli(*argv):
    return main(list(argv))


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


def test_solve_two_shock_json(tmp_path):
    code = run_cli("solve", "--left", "1,1", "--right", "-1,1.5", "--eps", "0.3",
                   "--out", str(tmp_path))
    assert code == 0
    doc = read_json(tmp_path / "solution.json")
    assert doc["system"] == "deposition"
    assert doc["pattern"] == "S1S2"
    assert len(doc["waves"]) == 2
    profile = (tmp_path / "profile.csv").read_text().splitlines()
    assert profile[0] == "xi,u,v"
    assert len(profile) == 1002


def test_solve_limit_system_delta_json(tmp_path):
    code = run_cli("solve", "--left", "1,1", "--right", "-1,1.5", "--out", str(tmp_path))
    assert code == 0
    doc = read_json(tmp_path / "solution.json")
    assert doc["system"] == "limit"
    assert doc["pattern"] == "DELTA"
    assert doc["sigma"] == 0.0
    assert doc["weight_rate"] == 2.5


def test_solve_rejects_nonpositive_density(tmp_path, capsys):
    code = run_cli("solve", "--left", "1,-1", "--right", "-1,1.5", "--eps", "0.3",
                   "--out", str(tmp_path))
    assert code == 2
    assert "v must be positive" in capsys.readouterr().err


def test_limit_targets_json(tmp_path):
    code = run_cli("limit-targets", "--left", "1,1", "--right", "-1,1.5",
                   "--out", str(tmp_path))
    assert code == 0
    doc = read_json(tmp_path / "targets.json")
    assert doc["threshold"]["eps0"] == 20.0
    assert doc["targets"]["product"] == 2.5
    assert doc["targets"]["v_star"] == "inf"


def test_sweep_default_grid_product(tmp_path):
    code = run_cli("sweep", "--out", str(tmp_path))
    assert code == 0
    doc = read_json(tmp_path / "sweep.json")
    final = doc["rows"][-1]
    assert final["eps"] == 1e-10
    assert abs(final["product"] - 2.5) < 1e-3
    csv_lines = (tmp_path / "sweep.csv").read_text().splitlines()
    assert csv_lines[0] == "eps,u_star,v_star,sigma1,sigma2,product,flags"
    assert len(csv_lines) == len(doc["rows"]) + 1


def test_sweep_flags_row_above_threshold(tmp_path):
    code = run_cli("sweep", "--eps-list", "25", "--out", str(tmp_path))
    assert code == 0
    doc = read_json(tmp_path / "sweep.json")
    assert doc["rows"][0]["in_regime"] is False
    assert "pattern=" in (tmp_path / "sweep.csv").read_text()


def test_sweep_empty_eps_list_fails(tmp_path, capsys):
    code = run_cli("sweep", "--eps-list", "", "--out", str(tmp_path))
    assert code == 2
    assert "at least one" in capsys.readouterr().err


def test_simulate_concentration_defaults(tmp_path):
    code = run_cli("simulate", "--eps", "0.001", "--out", str(tmp_path))
    assert code == 0
    doc = read_json(tmp_path / "sim_eps0.001_diagnostics.json")
    assert doc["cells"] == 500
    assert doc["cfl"] == 0.475
    final = doc["snapshots"][-1]
    assert final["t"] == 0.4
    assert abs(final["delta_weight_estimate"] - 1.0) < 0.15
    csv_lines = (tmp_path / "sim_eps0.001_t0.4.csv").read_text().splitlines()
    assert csv_lines[0] == "x,u,v"
    assert len(csv_lines) == 501


def test_simulate_gnuplot_extracts(tmp_path):
    code = run_cli("simulate", "--eps", "0.3", "--cells", "64", "--t-end", "0.1",
                   "--gnuplot", "--out", str(tmp_path))
    assert code == 0
    u_lines = (tmp_path / "sim_eps0.3_t0.1_u.dat").read_text().splitlines()
    v_lines = (tmp_path / "sim_eps0.3_t0.1_v.dat").read_text().splitlines()
    assert len(u_lines) == 64 and len(v_lines) == 64
    assert all(len(line.split(" ")) == 2 for line in u_lines)


def test_simulate_rejects_bad_cfl(tmp_path, capsys):
    code = run_cli("simulate", "--eps", "0.3", "--cfl", "0.6", "--out", str(tmp_path))
    assert code == 2
    assert "cfl" in capsys.readouterr().err


def test_simulate_requires_eps(tmp_path, capsys):
    code = run_cli("simulate", "--out", str(tmp_path))
    assert code == 2
    assert "--eps is required" in capsys.readouterr().err


def test_compare_reports_l1_and_weights(tmp_path):
    code = run_cli("compare", "--eps", "0.3", "--t", "0.4", "--cells", "250",
                   "--out", str(tmp_path))
    assert code == 0
    doc = read_json(tmp_path / "compare.json")
    assert doc["pattern"] == "S1S2"
    assert doc["l1"] > 0.0
    assert abs(doc["delta_weight"]["sim"] - doc["delta_weight"]["exact"]) < 0.1
    coarse = doc["l1"]

    code = run_cli("compare", "--eps", "0.3", "--t", "0.4", "--cells", "1000",
                   "--out", str(tmp_path))
    assert code == 0
    fine = read_json(tmp_path / "compare.json")["l1"]
    assert fine < coarse


def test_report_delta_mode(tmp_path):
    code = run_cli("report", "--eps-list", "1e-2,1e-4,1e-6,1e-8", "--out", str(tmp_path))
    assert code == 0
    doc = read_json(tmp_path / "report.json")
    assert doc["eps0"] == 20.0
    assert doc["convergence"]["mode"] == "delta"
    assert doc["convergence"]["flags"]["residual_converged"] is True


def test_report_pointwise_mode(tmp_path):
    code = run_cli("report", "--left", "2,1", "--right", "1,3",
                   "--eps-list", "1e-2,1e-5,1e-8", "--out", str(tmp_path))
    assert code == 0
    doc = read_json(tmp_path / "report.json")
    assert doc["convergence"]["mode"] == "pointwise"
    assert doc["convergence"]["flags"]["converged"] is True


def test_outputs_are_byte_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run_cli("sweep", "--eps-list", "1e-2,1e-5", "--out", str(out)) == 0
    assert (a / "sweep.csv").read_bytes() == (b / "sweep.csv").read_bytes()
    assert (a / "sweep.json").read_bytes() == (b / "sweep.json").read_bytes()


def test_config_file_supplies_flags_and_cli_overrides(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"eps": 0.3, "cells": 64, "t_end": 0.1}))
    out1 = tmp_path / "one"
    assert run_cli("simulate", "--config", str(cfg), "--out", str(out1)) == 0
    doc = read_json(out1 / "sim_eps0.3_diagnostics.json")
    assert doc["cells"] == 64

    out2 = tmp_path / "two"
    assert run_cli("simulate", "--config", str(cfg), "--cells", "128",
                   "--out", str(out2)) == 0
    doc = read_json(out2 / "sim_eps0.3_diagnostics.json")
    assert doc["cells"] == 128


def test_unknown_flag_exits_two(tmp_path, capsys):
    assert run_cli("solve", "--bogus", "1") == 2
    capsys.readouterr()


def test_bad_pair_exits_two(tmp_path, capsys):
    code = run_cli("solve", "--left", "1", "--right", "-1,1.5", "--eps", "0.3",
                   "--out", str(tmp_path))
    assert code == 2
    assert "comma-separated" in capsys.readouterr().err
