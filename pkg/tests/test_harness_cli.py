"""Tests for serialization, the suite harness and the CLI."""

import json
import subprocess
import sys

import numpy as np
import pytest

from aluthgelab.algebra import VNAlgebra, elem_residual
from aluthgelab.harness import REGISTRY, SuiteConfig, UnknownProperty, run_suite, select
from aluthgelab.preservers import CentralSplit, ConjLinearConj, ExceptionalI2, ScalarMultiple, UnitaryConj
from aluthgelab.serial import (
    SerializationError,
    algelem_from_json,
    algelem_to_json,
    cmatrix_from_json,
    cmatrix_to_json,
    map_from_json,
    map_to_json,
)
from aluthgelab import sampling


def test_cmatrix_roundtrip():
    rng = sampling.rng_for(61, "cm")
    m = sampling.random_matrix(rng, 3, 2)
    assert np.allclose(cmatrix_from_json(cmatrix_to_json(m)), m)
    with pytest.raises(SerializationError):
        cmatrix_from_json({"rows": 2, "cols": 2, "re": [1.0], "im": [0.0]})


def test_algelem_roundtrip():
    rng = sampling.rng_for(62, "ae")
    alg = VNAlgebra((1, 3))
    a = sampling.random_element(rng, alg)
    b = algelem_from_json(algelem_to_json(a))
    assert elem_residual(a, b) == 0.0
    with pytest.raises(SerializationError):
        algelem_from_json({"block_dims": [2], "blocks": []})


def test_map_roundtrip():
    alg = VNAlgebra((2, 2))
    rng = sampling.rng_for(63, "map")
    v = sampling.random_unitary_elem(rng, alg)
    v2 = sampling.random_unitary_elem(rng, VNAlgebra((2,)))
    maps = [
        UnitaryConj(v),
        ConjLinearConj(v),
        CentralSplit(alg.block_indicator(0), UnitaryConj(v), ConjLinearConj(v)),
        ExceptionalI2(1j, v2, normalized_trace=True),
        ScalarMultiple(2j, UnitaryConj(v)),
    ]
    a = sampling.random_element(rng, alg)
    a2 = sampling.random_element(rng, VNAlgebra((2,)))
    for phi in maps:
        back = map_from_json(map_to_json(phi))
        probe = a2 if phi.domain.block_dims == (2,) else a
        assert elem_residual(phi.apply(probe), back.apply(probe)) <= 1e-12, phi.kind
    with pytest.raises(SerializationError):
        map_from_json({"kind": "nope"})


def test_suite_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig(seed=1, trials_per_property=0)
    with pytest.raises(ValueError):
        SuiteConfig(seed=1, lambda_grid=(2.0,))


def test_selection():
    assert len(select("all")) == len(REGISTRY)
    assert select(["kernel"])[0].pid == "kernel"
    with pytest.raises(UnknownProperty):
        select(["no_such_property"])
    with pytest.raises(UnknownProperty):
        select([])


def test_run_suite_deterministic():
    cfg = SuiteConfig(seed=7, trials_per_property=24)
    r1 = run_suite(cfg, ["kernel", "rank_one", "m2_witness"])
    r2 = run_suite(cfg, ["kernel", "rank_one", "m2_witness"])
    assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)
    assert r1["all_ok"]


def test_expected_fail_bookkeeping():
    cfg = SuiteConfig(seed=7, trials_per_property=16)
    report = run_suite(cfg, ["additivity:abelian_inverse", "h3:abelian_inverse"])
    by_id = {e["property_id"]: e for e in report["results"]}
    add = by_id["additivity:abelian_inverse"]
    assert add["expected_outcome"] == "fail" and not add["observed_pass"] and add["ok"]
    h3 = by_id["h3:abelian_inverse"]
    assert h3["expected_outcome"] == "pass" and h3["observed_pass"] and h3["ok"]


def _cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "aluthgelab.cli", *args],
        capture_output=True,
        text=True,
    )


def test_cli_transform_roundtrip(tmp_path):
    infile = tmp_path / "a.json"
    outfile = tmp_path / "b.json"
    elem = {"block_dims": [2], "blocks": [{"rows": 2, "cols": 2, "re": [1, 1, 0, 0], "im": [0, 0, 0, 0]}]}
    infile.write_text(json.dumps(elem))
    proc = _cli("transform", "--lambda", "0.5", "--in", str(infile), "--out", str(outfile))
    assert proc.returncode == 0
    out = algelem_from_json(json.loads(outfile.read_text()))
    assert np.allclose(out.blocks[0], 0.5 * np.ones((2, 2)))


def test_cli_transform_errors(tmp_path):
    missing = _cli("transform", "--lambda", "0.5", "--in", str(tmp_path / "x.json"), "--out", str(tmp_path / "y.json"))
    assert missing.returncode == 2
    infile = tmp_path / "a.json"
    infile.write_text("{not json")
    bad = _cli("transform", "--lambda", "0.5", "--in", str(infile), "--out", str(tmp_path / "y.json"))
    assert bad.returncode == 2


def test_cli_orbit(tmp_path):
    infile = tmp_path / "a.json"
    outfile = tmp_path / "o.csv"
    elem = {"block_dims": [2], "blocks": [{"rows": 2, "cols": 2, "re": [0, 1, 0, 0], "im": [0, 0, 0, 0]}]}
    infile.write_text(json.dumps(elem))
    proc = _cli("orbit", "--lambda", "0.5", "--steps", "3", "--in", str(infile), "--out", str(outfile))
    assert proc.returncode == 0
    lines = outfile.read_text().strip().splitlines()
    assert lines[0] == "step,quasinormal_residual,distance_to_previous"
    assert len(lines) == 5
    # nilpotent collapses to zero after one step
    assert float(lines[2].split(",")[1]) <= 1e-12


def test_cli_verify_selection_and_exit_codes(tmp_path):
    report = tmp_path / "r.json"
    ok = _cli("verify", "--seed", "3", "--suite", "kernel,rank_one", "--trials", "16", "--report", str(report))
    assert ok.returncode == 0
    data = json.loads(report.read_text())
    assert data["all_ok"] and len(data["results"]) == 2
    bad = _cli("verify", "--seed", "3", "--suite", "nonsense")
    assert bad.returncode == 2
    empty = _cli("verify", "--seed", "3", "--suite", "")
    assert empty.returncode == 2


def test_cli_list_properties():
    proc = _cli("list-properties")
    assert proc.returncode == 0
    assert "kernel" in proc.stdout
    assert "expected-fail" in proc.stdout
    assert len(proc.stdout.strip().splitlines()) == len(REGISTRY)


def test_cli_tol_env(tmp_path, monkeypatch):
    infile = tmp_path / "a.json"
    infile.write_text(json.dumps({"block_dims": [1], "blocks": [{"rows": 1, "cols": 1, "re": [1], "im": [0]}]}))
    proc = subprocess.run(
        [sys.executable, "-m", "aluthgelab.cli", "transform", "--lambda", "0.5",
         "--in", str(infile), "--out", str(tmp_path / "b.json")],
        capture_output=True, text=True, env={"ALUTHGE_TOL": "1e-6", "PATH": "/usr/bin:/bin"},
    )
    assert proc.returncode == 0
    bad = subprocess.run(
        [sys.executable, "-m", "aluthgelab.cli", "transform", "--lambda", "0.5",
         "--in", str(infile), "--out", str(tmp_path / "b.json")],
        capture_output=True, text=True, env={"ALUTHGE_TOL": "banana", "PATH": "/usr/bin:/bin"},
    )
    assert bad.returncode != 0
