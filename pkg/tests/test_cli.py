import json
import math
import os

import numpy as np
import pytest

from spectral_dpp.cli import ConfigError, resolve_config, run_command
from spectral_dpp.sampler import EnvelopeViolationError


def run_in(tmp_path, argv):
    cwd = os.getcwd()
    os.chdir(tmp_path)
    try:
        return run_command(argv)
    finally:
        os.chdir(cwd)


def read_json(tmp_path, name):
    with open(tmp_path / name) as fh:
        return json.load(fh)


def test_weyl_command(tmp_path):
    code = run_in(tmp_path, ["weyl", "--manifold", "sphere2",
                             "--lambdas", "10,20,40", "--out", "w"])
    assert code == 0
    lines = (tmp_path / "w.csv").read_text().strip().splitlines()
    assert lines[0] == "lambda,count,leading,ratio,residual"
    first = lines[1].split(",")
    assert float(first[0]) == 10.0 and float(first[1]) == 100
    doc = read_json(tmp_path, "w.json")
    assert doc["command"] == "weyl"
    assert doc["config"]["manifold"] == "sphere2"
    assert set(doc) == {"command", "config", "results", "errors_se",
                        "slopes", "runtime_seconds"}


def test_sample_command_rank_one(tmp_path):
    code = run_in(tmp_path, ["sample", "--manifold", "circle", "--lambda", "0",
                             "--replicas", "1", "--seed", "7", "--out", "pts"])
    assert code == 0
    lines = (tmp_path / "pts.csv").read_text().strip().splitlines()
    assert lines[0] == "replica,index,space,c1"
    assert len(lines) == 2
    replica, index, space, c1 = lines[1].split(",")
    assert (replica, index, space) == ("0", "0", "manifold")
    assert 0.0 <= float(c1) < 2 * math.pi


def test_gap_command_default_order(tmp_path):
    code = run_in(tmp_path, ["gap", "--manifold", "circle", "--lambda", "3.5",
                             "--arc", "0.5", "--out", "g"])
    assert code == 0
    doc = read_json(tmp_path, "g.json")
    assert doc["config"]["quad_order"] == 64
    assert doc["results"]["orders"] == [64, 128]
    assert doc["results"]["self_convergence"] <= 1e-10
    assert 0.0 < doc["results"]["gap"] < 1.0


def test_unknown_subcommand_exits_2(tmp_path, capsys):
    assert run_in(tmp_path, ["frobnicate"]) == 2
    err = capsys.readouterr().err
    assert "usage" in err.lower()


def test_config_error_exits_2(tmp_path):
    assert run_in(tmp_path, ["weyl", "--lambdas", "1,2"]) == 2          # no manifold
    assert run_in(tmp_path, ["weyl", "--manifold", "nope",
                             "--lambdas", "1,2"]) == 2
    assert run_in(tmp_path, ["sample", "--manifold", "circle",
                             "--lambda", "1"]) == 2                     # no replicas


def test_numerical_failure_exits_3(tmp_path, monkeypatch):
    import spectral_dpp.cli as cli

    def boom(cfg):
        raise EnvelopeViolationError("rigged")

    monkeypatch.setitem(cli._RUNNERS, "sample", boom)
    assert run_in(tmp_path, ["sample", "--manifold", "circle",
                             "--lambda", "1", "--replicas", "1"]) == 3


def test_byte_identical_outputs(tmp_path):
    argv = ["sample", "--manifold", "sphere2", "--lambda", "3",
            "--replicas", "3", "--seed", "5", "--out", "a"]
    assert run_in(tmp_path, argv) == 0
    first_csv = (tmp_path / "a.csv").read_bytes()
    first_json = json.loads((tmp_path / "a.json").read_text())
    assert run_in(tmp_path, argv) == 0
    assert (tmp_path / "a.csv").read_bytes() == first_csv
    second_json = json.loads((tmp_path / "a.json").read_text())
    first_json.pop("runtime_seconds")
    second_json.pop("runtime_seconds")
    assert first_json == second_json


def test_config_file_with_flag_override(tmp_path):
    (tmp_path / "exp.cfg").write_text(
        "manifold = circle\nlambda = 0\nreplicas = 2\nseed = 9\n")
    code = run_in(tmp_path, ["sample", "--config", "exp.cfg",
                             "--replicas", "4", "--out", "c"])
    assert code == 0
    lines = (tmp_path / "c.csv").read_text().strip().splitlines()
    assert len(lines) == 5      # header + 4 replicas of one point
    doc = read_json(tmp_path, "c.json")
    assert doc["config"]["replicas"] == 4
    assert doc["config"]["seed"] == 9


def test_kernel_command_csv_schema(tmp_path):
    code = run_in(tmp_path, ["kernel", "--manifold", "torus:2",
                             "--lambda", "2", "--kind", "scaled",
                             "--grid-points", "3", "--grid-max", "1.0",
                             "--out", "k"])
    assert code == 0
    lines = (tmp_path / "k.csv").read_text().strip().splitlines()
    assert lines[0] == "u1,u2,v1,v2,value"
    assert len(lines) == 1 + 9 * 9


def test_converge_command(tmp_path):
    code = run_in(tmp_path, ["converge", "--manifold", "circle",
                             "--lambdas", "10,20,40",
                             "--eps", f"{math.pi/2},{math.pi/3}",
                             "--out", "cv"])
    assert code == 0
    doc = read_json(tmp_path, "cv.json")
    rows = doc["results"]["sup_difference"]["rows"]
    assert all(row[1] == row[2] for row in rows)
    assert doc["slopes"]["eps_0"]["slope"] < -0.5


def test_pcf_command(tmp_path):
    code = run_in(tmp_path, ["pcf", "--manifold", "torus:1", "--lambda", "10",
                             "--replicas", "1000", "--seed", "2",
                             "--window", "4", "--rmax", "4", "--bins", "8",
                             "--out", "p"])
    assert code == 0
    lines = (tmp_path / "p.csv").read_text().strip().splitlines()
    assert lines[0] == "r_lo,r_hi,g2,se,g2_finite,g2_limit"
    assert len(lines) == 9


def test_laplace_command(tmp_path):
    code = run_in(tmp_path, ["laplace", "--manifold", "circle",
                             "--lambda", "2.5", "--arc", "0.5",
                             "--replicas", "2000", "--seed", "3",
                             "--out", "l"])
    assert code == 0
    doc = read_json(tmp_path, "l.json")
    res = doc["results"]
    assert res["diff_over_se"] <= 4.0
    assert doc["errors_se"]["mc_value"] > 0


def test_plot_writes_figure(tmp_path):
    code = run_in(tmp_path, ["weyl", "--manifold", "circle",
                             "--lambdas", "10,20,40,80", "--out", "wp",
                             "--plot"])
    assert code == 0
    data = (tmp_path / "wp.png").read_bytes()
    assert data[:8] == b"\x89PNG\r\n\x1a\n"


def test_resolve_config_defaults():
    import argparse
    ns = argparse.Namespace(command="gap", manifold="circle", lam="3.5",
                            lambdas=None, point=None, eps=None, replicas=None,
                            seed=None, out=None, threads=None, quad_order=None,
                            config=None, plot=None, arc="0.5")
    cfg = resolve_config(ns)
    assert cfg["quad_order"] == 64
    assert cfg["seed"] == 0
    assert cfg["out"] == "gap"
    assert "eps" not in cfg
