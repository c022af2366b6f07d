"""Smoke tests for the compiled module and the CLI binary."""

import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

qehc = pytest.importorskip("qehc")


def random_hermitian(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (g + g.conj().T) / 2.0


def test_schatten_norm_against_numpy():
    rng = np.random.default_rng(1)
    x = random_hermitian(rng, 8)
    sv = np.linalg.svd(x, compute_uv=False)
    for p in (1.0, 1.7, 2.0, 3.0):
        want = (np.mean(sv**p)) ** (1.0 / p)
        assert qehc.schatten_norm_normalized(x, p) == pytest.approx(want, abs=1e-10)
        assert qehc.schatten_norm(x, p) == pytest.approx(
            (np.sum(sv**p)) ** (1.0 / p), abs=1e-9
        )


def test_eps_q_norm_endpoints_and_oracle():
    rng = np.random.default_rng(2)
    x = random_hermitian(rng, 4)
    assert qehc.eps_q_norm(x, 0.0, 2.0) == pytest.approx(
        qehc.schatten_norm_normalized(x, 2.0), abs=1e-12
    )
    assert qehc.eps_q_norm(x, 1.0, 2.0) == pytest.approx(
        abs(np.trace(x)) / 4.0, abs=1e-12
    )
    for eps in (0.25, 0.75):
        for q in (1.0, 1.5, 2.0):
            assert qehc.eps_q_norm(x, eps, q) == pytest.approx(
                qehc.dense_oracle(x, eps, q), abs=1e-9
            )


def test_partial_trace_matches_numpy_reshape():
    rng = np.random.default_rng(3)
    x = random_hermitian(rng, 4)
    # trace out qubit 2 (least significant): reshape convention check
    t = qehc.partial_trace_normalized(x, [2])
    want = 0.5 * np.einsum("abcb->ac", x.reshape(2, 2, 2, 2))
    assert np.allclose(t, want, atol=1e-12)


def test_entropy_and_log_sobolev():
    rng = np.random.default_rng(4)
    a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    x = a.conj().T @ a
    assert qehc.ent_q(x, 1.5) >= -1e-9
    report = qehc.log_sobolev_gap(x, 2, 0.5, 1.5)
    assert report["pass"]
    assert report["rhs"] == pytest.approx(
        2.0 * qehc.dirichlet_j(x, 2, 0.5, 1.5) + 2.0 * qehc.dirichlet_k(x, 2, 0.5, 1.5)
    )


def test_check_hc_and_replay():
    rng = np.random.default_rng(5)
    x = random_hermitian(rng, 4)
    report = qehc.check_hc(x, 1.5, 2.5, 1.0 - 0.5 / 1.5, 1)
    assert report["pass"]
    again = qehc.replay_check(report["witness"])
    assert again["lhs"] == pytest.approx(report["lhs"], abs=1e-12)


def test_crg_bounds_match_formulas():
    eps, gamma, k = 0.8, 0.04, 1000.0
    e = eps / 2.0
    want = (e * (1 - gamma) - 2 * math.sqrt(e * (1 - e) * gamma)) * k
    assert qehc.crg_lower_bound(eps, gamma, k) == pytest.approx(want, abs=1e-9)
    _, via_delta = qehc.crg_optimize_delta(eps, gamma, k)
    assert via_delta == pytest.approx(want, abs=1e-6 * k)
    assert qehc.crg_classical_upper_bound(eps, gamma, k) >= want
    assert qehc.min_entropy([0.5, 0.25, 0.25]) == pytest.approx(1.0)
    assert qehc.guess_zero_success(1, 0.3) == pytest.approx(0.85, abs=1e-12)


def test_suite_is_deterministic():
    cfg = json.dumps({"checks": ["two-point-bound", "gross-refined"],
                      "samples": 4, "seed": 11, "n": 2})
    assert qehc.suite_csv(cfg) == qehc.suite_csv(cfg)


CLI = os.environ.get("QEHC_CLI")


@pytest.mark.skipif(CLI is None, reason="QEHC_CLI not set")
def test_cli_usage_and_determinism(tmp_path):
    no_args = subprocess.run([CLI], capture_output=True, text=True)
    assert no_args.returncode != 0
    assert "subcommand" in (no_args.stderr + no_args.stdout).lower()

    out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (out_a, out_b):
        done = subprocess.run(
            [CLI, "verify", "--suite", "smoke", "--seed", "7", "--n", "2",
             "--samples", "4", "--out", str(out)],
            capture_output=True, text=True)
        assert done.returncode == 0, done.stderr
    assert out_a.read_bytes() == out_b.read_bytes()
    summary = json.loads((tmp_path / "a.csv.summary.json").read_text())
    assert summary["failures"] == 0


@pytest.mark.skipif(CLI is None, reason="QEHC_CLI not set")
def test_cli_config_file_with_flag_precedence(tmp_path):
    cfg = tmp_path / "suite.json"
    cfg.write_text(json.dumps({"checks": ["two-point-bound"], "samples": 2,
                               "seed": 3, "n": 1}))
    out = tmp_path / "out.csv"
    done = subprocess.run(
        [CLI, "verify", "--config", str(cfg), "--samples", "6", "--out", str(out)],
        capture_output=True, text=True)
    assert done.returncode == 0, done.stderr
    rows = out.read_text().strip().splitlines()
    assert len(rows) == 1 + 6  # header + flag-overridden sample count
    assert all(r.startswith("two-point-bound,") for r in rows[1:])


@pytest.mark.skipif(CLI is None, reason="QEHC_CLI not set")
def test_cli_crg_bound(tmp_path):
    out = tmp_path / "crg.csv"
    done = subprocess.run(
        [CLI, "crg-bound", "--eps", "0.5", "--gamma-grid", "0.01:0.03:0.01",
         "--k", "1000", "--out", str(out)],
        capture_output=True, text=True)
    assert done.returncode == 0, done.stderr
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "eps,gamma,k,c,lower_bound,delta_star,classical_upper"
    assert len(lines) == 4


@pytest.mark.skipif(CLI is None, reason="QEHC_CLI not set")
def test_cli_crg_sim_strategy_file(tmp_path):
    # the n=1 measure-and-guess-zero protocol, written out in the wire format
    zero = [[0.0, 0.0], [0.0, 0.0]]
    proj = lambda k: {"rows": 2, "cols": 2,
                      "re": [[1.0 - k, 0.0], [0.0, float(k)]], "im": zero}
    scalar = lambda v: {"rows": 1, "cols": 1, "re": [[float(v)]], "im": [[0.0]]}
    family = lambda top, flag: {"n": 1, "blocks": [
        {"subset": [], "matrix": top}, {"subset": [1], "matrix": scalar(flag)}]}
    doc = {
        "n": 1,
        "alice": [{"outcome": "0", "message": "", "matrix": proj(0)},
                  {"outcome": "1", "message": "", "matrix": proj(1)}],
        "bob": [{"message": "", "elements": [
            {"outcome": "0", "family": family(proj(0), 1)},
            {"outcome": "1", "family": family(proj(1), 0)}]}],
    }
    path = tmp_path / "strategy.json"
    path.write_text(json.dumps(doc))
    done = subprocess.run(
        [CLI, "crg-sim", "--strategy", str(path), "--eps", "0.4"],
        capture_output=True, text=True)
    assert done.returncode == 0, done.stderr
    assert float(done.stdout.strip().splitlines()[1].split(",")[2]) == pytest.approx(0.8)


@pytest.mark.skipif(CLI is None, reason="QEHC_CLI not set")
def test_cli_norm_roundtrip(tmp_path):
    doc = {
        "n": 1, "rows": 2, "cols": 2,
        "re": [[2.0, 0.0], [0.0, 0.0]],
        "im": [[0.0, 0.0], [0.0, 0.0]],
    }
    mat = tmp_path / "mat.json"
    mat.write_text(json.dumps(doc))
    done = subprocess.run(
        [CLI, "norm", "--in", str(mat), "--p", "2", "--eps", "0.5", "--q", "2"],
        capture_output=True, text=True)
    assert done.returncode == 0, done.stderr
    rows = done.stdout.strip().splitlines()
    assert rows[1].startswith("schatten,2,")
    assert float(rows[1].split(",")[4]) == pytest.approx(math.sqrt(2.0))
    assert float(rows[2].split(",")[4]) == pytest.approx(math.sqrt(1.5))
