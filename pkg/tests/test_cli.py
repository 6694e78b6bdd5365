import json
import subprocess
import sys

import pytest

CMD = [sys.executable, "-m", "cesaro_copson.cli"]


def run(*args):
    return subprocess.run(CMD + list(args), capture_output=True, text=True)


def test_norm_power_pair_closed_form():
    r = run("norm", "--op", "cesaro", "--cone", "all",
            "--u", "power:0.5", "--v", "power:0.5")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["value"] == pytest.approx(2.0)
    assert doc["status"] == "ClosedForm"
    assert set(doc) == {"op", "cone", "value", "status", "n_used", "residual"}


def test_norm_open_problem_exits_2():
    r = run("norm", "--op", "copson-minus-identity", "--cone", "nonincr",
            "--u", "power:1", "--v", "power:1")
    assert r.returncode == 2
    assert "open problem" in r.stderr
    assert json.loads(r.stdout)["value"] is None


def test_norm_list_weights(tmp_path):
    path = tmp_path / "w.csv"
    path.write_text("1\n1\n1\n1\n")
    r = run("norm", "--op", "cesaro", "--cone", "all",
            "--u", f"list:{path}", "--v", f"list:{path}")
    assert r.returncode == 0
    assert json.loads(r.stdout)["value"] == pytest.approx(1.0)


def test_two_op_examples():
    r = run("two-op", "--dir", "c-le-cstar", "--cone", "all",
            "--u", "power:-1", "--v", "power:-1")
    assert r.returncode == 0
    assert json.loads(r.stdout)["value"] == pytest.approx(3.0)
    r = run("two-op", "--dir", "cstar-le-c", "--cone", "nonneg",
            "--u", "power:2", "--v", "power:2")
    assert r.returncode == 0
    assert json.loads(r.stdout)["value"] == 0.0
    r = run("two-op", "--dir", "cstar-le-c", "--cone", "all",
            "--u", "power:2", "--v", "power:2")
    assert r.returncode == 0
    assert json.loads(r.stdout)["value"] == pytest.approx(2.5797362, abs=1e-6)


def test_divergent_reported_as_inf_string_with_exit_0():
    r = run("norm", "--op", "copson", "--cone", "all",
            "--u", "power:-1", "--v", "power:-1")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["value"] == "inf" and doc["status"] == "Divergent"
    assert '"inf"' in r.stdout  # never a bare JSON number


def test_powerpair_spec():
    r = run("norm", "--op", "cesaro", "--cone", "all", "--u", "powerpair:0.5")
    assert r.returncode == 0
    assert json.loads(r.stdout)["value"] == pytest.approx(2.0)
    r = run("norm", "--op", "cesaro", "--cone", "all",
            "--u", "powerpair:0.5", "--v", "power:1")
    assert r.returncode == 1


def test_byte_identical_reruns():
    args = ("norm", "--op", "copson", "--cone", "nonneg",
            "--u", "power:1", "--v", "power:1")
    a = run(*args)
    b = run(*args)
    assert a.stdout == b.stdout and a.returncode == b.returncode == 0


def test_parse_errors_exit_1():
    assert run("norm", "--op", "cesaro", "--cone", "all",
               "--u", "bogus:1", "--v", "power:1").returncode == 1
    assert run("norm", "--op", "nope", "--cone", "all",
               "--u", "power:1", "--v", "power:1").returncode == 1
    assert run("norm", "--op", "cesaro", "--cone", "all",
               "--u", "power:1").returncode == 1
    assert run("power-table", "--theorem", "cesaro", "--from", "0",
               "--to", "1", "--step", "-0.1").returncode == 1
    assert run("norm", "--op", "cesaro", "--cone", "all",
               "--u", "list:/nonexistent.csv", "--v", "power:1").returncode == 1


def test_power_table_shape_and_tokens():
    r = run("power-table", "--theorem", "cesaro",
            "--from", "-1", "--to", "0.9", "--step", "0.1")
    assert r.returncode == 0
    lines = r.stdout.strip().splitlines()
    assert lines[0] == "alpha,cone,value,case_label"
    assert len(lines) == 1 + 20 * 4  # 20 alphas x 4 cones
    r = run("power-table", "--theorem", "copson",
            "--from", "-0.5", "--to", "-0.5", "--step", "1")
    rows = r.stdout.strip().splitlines()
    assert len(rows) == 1 + 4  # degenerate range: single alpha
    assert any(",inf," in row for row in rows[1:])


def test_power_table_open_problem_note():
    r = run("power-table", "--theorem", "copson-minus-identity",
            "--from", "0.5", "--to", "0.5", "--step", "0.1")
    assert r.returncode == 0
    lines = r.stdout.strip().splitlines()
    assert lines[0].startswith("#") and "open problem" in lines[0]
    assert all("nonincr" not in line for line in lines[1:])


def test_verify_identities_suite():
    r = run("verify", "--suite", "identities", "--seed", "42")
    assert r.returncode == 0
    reports = json.loads(r.stdout)
    assert len(reports) == 1 and reports[0]["pass"]


def test_verify_oracle_deterministic():
    args = ("verify", "--suite", "oracle", "--seed", "42", "--trials", "100",
            "--pairs", "4")
    a = run(*args)
    b = run(*args)
    assert a.returncode == 0
    assert a.stdout == b.stdout


def test_worker_cap_does_not_change_output():
    import os
    args = ("verify", "--suite", "oracle", "--seed", "3", "--trials", "60",
            "--pairs", "3")
    env1 = dict(os.environ, NORMS_THREADS="1")
    env4 = dict(os.environ, NORMS_THREADS="4")
    a = subprocess.run(CMD + list(args), capture_output=True, text=True, env=env1)
    b = subprocess.run(CMD + list(args), capture_output=True, text=True, env=env4)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
