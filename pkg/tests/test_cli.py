"""End-to-end checks of the command line front end via subprocesses."""

import json
import os
import subprocess
import sys

import numpy as np
import pytest

from finobs.serial import dumps_value, loads_value


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "finobs", *args],
        capture_output=True,
        text=True,
        env=env,
    )


@pytest.fixture
def workdir(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text if text.endswith("\n") else text + "\n")
        return str(path)

    return tmp_path, write


def test_evolve_matches_the_library(workdir):
    _, write = workdir
    ham = write(
        "h.json",
        '{"ambient_dim": 2, "pairs": ['
        '{"value": 0.0, "vector": [[1, 0], [0, 0]]},'
        '{"value": 3.141592653589793, "vector": [[0, 0], [1, 0]]}]}',
    )
    s = 1.0 / np.sqrt(2.0)
    state = write("psi.json", dumps_value("state", np.array([s, s])))
    done = run_cli("evolve", "--hamiltonian", ham, "--state", state, "--time", "1.0")
    assert done.returncode == 0, done.stderr
    psi = loads_value("state", done.stdout)
    assert np.allclose(psi, [s, -s], atol=1e-12)


def test_evolve_accepts_a_bare_matrix_too(workdir):
    tmp, write = workdir
    ham = write("h.json", dumps_value("operator", np.diag([0.0, np.pi]).astype(complex)))
    s = 1.0 / np.sqrt(2.0)
    state = write("psi.json", dumps_value("state", np.array([s, s])))
    out_path = tmp / "out.json"
    done = run_cli(
        "evolve", "--hamiltonian", ham, "--state", state, "--time", "1.0",
        "-o", str(out_path),
    )
    assert done.returncode == 0 and done.stdout == ""
    again = run_cli("evolve", "--hamiltonian", ham, "--state", state, "--time", "1.0")
    assert out_path.read_text() == again.stdout


def test_evolve_outside_domain_exits_2(workdir):
    _, write = workdir
    partial = write(
        "h.json",
        '{"ambient_dim": 2, "pairs": [{"value": 1.0, "vector": [[1, 0], [0, 0]]}]}',
    )
    state = write("psi.json", '{"vector": [[0, 0], [1, 0]]}')
    done = run_cli("evolve", "--hamiltonian", partial, "--state", state, "--time", "1.0")
    assert done.returncode == 2
    assert "outside operator domain" in done.stderr


def test_concat_dimension_mismatch_exits_1(workdir):
    _, write = workdir
    a = write("a.json", dumps_value("operator", np.eye(2, dtype=complex)))
    b = write("b.json", dumps_value("operator", np.eye(3, dtype=complex)))
    done = run_cli("concat", "--a", a, "--b", b)
    assert done.returncode == 1
    assert "error: dimension mismatch: first operator is 2, second is 3" in done.stderr


def test_measure_emits_the_partition(workdir):
    _, write = workdir
    family = write(
        "family.json",
        json.dumps(
            {
                "objects": ["x", "y", "z"],
                "distinguished": "a",
                "labels": ["0", "1"],
                "labelings": [{"entries": {"x": "0", "y": "1"}}],
            }
        ),
    )
    done = run_cli("measure", "--family", family)
    assert done.returncode == 0, done.stderr
    node = json.loads(done.stdout)
    assert node["blocks"] == [["a", "z"], ["x"], ["y"]]


def test_spec_diagonalizes(workdir):
    _, write = workdir
    op = write(
        "m.json", dumps_value("operator", np.array([[2.0, 1.0], [1.0, 2.0]], dtype=complex))
    )
    done = run_cli("spec", "--operator", op)
    assert done.returncode == 0
    system = loads_value("eigensystem", done.stdout)
    assert np.allclose(system.values, [1.0, 3.0])


def test_expect_and_compress(workdir):
    _, write = workdir
    obs = write("t.json", dumps_value("operator", np.diag([1.0, 2.0]).astype(complex)))
    rho = write("rho.json", dumps_value("density", np.diag([0.25, 0.75]).astype(complex)))
    func = write("f.json", '{"poly": [0.0, 1.0]}')
    done = run_cli("expect", "--observable", obs, "--density", rho, "--function", func)
    assert done.returncode == 0
    assert json.loads(done.stdout)["value"] == pytest.approx(1.75)
    done = run_cli("compress", "--observable", obs, "--density", rho)
    assert done.returncode == 0
    sigma = loads_value("density", done.stdout)
    assert np.allclose(sigma, np.diag([0.25, 0.75]))


def test_uncertainty_reports_the_product(workdir):
    done = run_cli("uncertainty", "--dim", "5", "--alphas", "0,1.4142135623730951")
    assert done.returncode == 0, done.stderr
    node = json.loads(done.stdout)
    assert node["variance"][0] == pytest.approx(0.5)
    assert node["variance"][1] == pytest.approx(0.5)
    assert node["product"] == pytest.approx(0.25)
    assert len(node["shared_rays"]) == 1


def test_seed_env_overrides_flag(workdir):
    with_flag = run_cli("uncertainty", "--dim", "5", "--alphas", "0,2", "--seed", "7")
    with_env = run_cli(
        "uncertainty", "--dim", "5", "--alphas", "0,2",
        env_extra={"FINOBS_SEED": "7"},
    )
    assert with_flag.returncode == with_env.returncode == 0
    assert with_flag.stdout == with_env.stdout
    bad = run_cli("verify", "--suite", "socks", env_extra={"FINOBS_SEED": "x"})
    assert bad.returncode == 1
    assert "FINOBS_SEED" in bad.stderr


def test_socks_support_and_flip(workdir):
    _, write = workdir
    vector = write("v.json", '{"coeffs": [[1, 0], [0, 0], [2, 0]]}')
    done = run_cli("socks", "--support", "--vector", vector)
    assert done.returncode == 0
    assert json.loads(done.stdout)["support"] == [0, 1]
    flips = write("flips.json", '{"pairs": [1]}')
    done = run_cli("socks", "--flip", flips, "--vector", vector)
    assert done.returncode == 0
    moved = loads_value("fockvector", done.stdout)
    assert np.array_equal(moved.coeffs, [1.0, 0.0, -2.0])
    missing = run_cli("socks", "--support")
    assert missing.returncode == 1
    assert "missing required flag --vector" in missing.stderr


def test_fh_zero_sum_and_refute(workdir):
    _, write = workdir
    op = write(
        "op.json",
        '{"support": ["p", "q"], "F": [[[1, 0], [3, 0]], [[4, 0], [2, 0]]], "tail": [5, 0]}',
    )
    done = run_cli("fh", "--check-zero-sum", "--operator", op)
    assert done.returncode == 0
    assert json.loads(done.stdout)["zero_sum"] is True
    density = write(
        "rho.json",
        '{"support": ["d0"], "F": [[[0.5, 0]]], "tail": [0.25, 0], "symmetric": true}',
    )
    done = run_cli("fh", "--refute", "--operator", density)
    assert done.returncode == 0
    node = json.loads(done.stdout)
    assert node["trace"] == "INFINITE"
    assert node["state_value"] == 1
    assert node["agrees"] is False
    assert node["witness"]["cofinite_excluding"] == ["d0"]


def test_lattice_modular(workdir):
    _, write = workdir
    s = 1.0 / np.sqrt(2.0)
    x = write("x.json", '{"finite": [{"p": [1, 0]}], "cofinite_excluding": null}')
    y = write("y.json", '{"finite": [], "cofinite_excluding": ["p", "q"]}')
    z = write(
        "z.json",
        json.dumps({"finite": [{"p": [s, 0], "q": [s, 0]}], "cofinite_excluding": None}),
    )
    done = run_cli("lattice", "--op", "modular", "--a", x, "--b", y, "--c", z)
    assert done.returncode == 0
    assert json.loads(done.stdout)["modular"] is True
    done = run_cli("lattice", "--op", "alpha", "--a", y)
    assert json.loads(done.stdout)["value"] == 1
    incomplete = run_cli("lattice", "--op", "meet", "--a", x)
    assert incomplete.returncode == 1


def test_verify_is_deterministic(workdir):
    first = run_cli("verify", "--suite", "serialization", "--seed", "3")
    second = run_cli("verify", "--suite", "serialization", "--seed", "3")
    assert first.returncode == 0, first.stdout + first.stderr
    assert first.stdout == second.stdout
    assert first.stdout.startswith("verify suite=serialization seed=3")
    assert "0 failed" in first.stdout
    other = run_cli("verify", "--suite", "serialization", "--seed", "4")
    assert other.stdout != first.stdout  # seed reaches the check data


def test_verify_rejects_unknown_suite():
    done = run_cli("verify", "--suite", "nope")
    assert done.returncode == 1
    assert "unknown suite" in done.stderr


def test_usage_errors_exit_1():
    done = run_cli("frobnicate")
    assert done.returncode == 1
    assert "usage:" in done.stderr
    bare = run_cli()
    assert bare.returncode == 1
    assert "subcommand is required" in bare.stderr


def test_missing_input_file_exits_1(workdir):
    tmp, _ = workdir
    done = run_cli("spec", "--operator", str(tmp / "absent.json"))
    assert done.returncode == 1
    assert "error:" in done.stderr
