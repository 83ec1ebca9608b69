import csv
import io
import json
import math
import subprocess
import sys

import pytest

from fockbench.asymptotics import partial_sum
from fockbench import SeqSpec
from fockbench.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


@pytest.fixture
def matrix_file(tmp_path):
    def write(obj, name="m.json"):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)
    return write


def test_perm_identity_both(capsys, matrix_file):
    path = matrix_file({"n": 3, "entries": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})
    code, out, _ = run_json(capsys, "perm", "--matrix", path)
    assert code == 0
    assert out == {"naive": 1, "ryser": 1, "agree": True}


def test_perm_ones_ryser(capsys, matrix_file):
    path = matrix_file({"n": 2, "entries": [[1, 1], [1, 1]]})
    code, out, _ = run_json(capsys, "perm", "--matrix", path, "--algorithm", "ryser")
    assert code == 0 and out == {"ryser": 2}


def test_perm_complex_entries(capsys, matrix_file):
    path = matrix_file({"n": 2, "entries": [[1, "1/2"], [{"re": 0, "im": 1}, 3]]})
    code, out, _ = run_json(capsys, "perm", "--matrix", path)
    assert code == 0
    assert out["ryser"] == out["naive"] == {"re": 3, "im": "1/2"}
    assert out["agree"]


@pytest.mark.parametrize("content", ["{not json", '{"n": 2, "entries": [[1]]}'])
def test_perm_malformed(capsys, matrix_file, content):
    code, out, err = run(capsys, "perm", "--matrix", matrix_file(content))
    assert code == 1 and out == "" and "error" in err


def test_perm_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "perm", "--matrix", str(tmp_path / "absent.json"))
    assert code == 1 and "absent.json" in err


def test_perm_size_guard(capsys, matrix_file, monkeypatch):
    monkeypatch.setenv("FOCKBENCH_MAX_RYSER_N", "2")
    path = matrix_file({"n": 3, "entries": [[1] * 3] * 3})
    code, _, _ = run(capsys, "perm", "--matrix", path, "--algorithm", "ryser")
    assert code == 1


def test_check_theorem2(capsys):
    code, out, _ = run_json(capsys, "check", "theorem2", "--d", "3", "--n-max", "5",
                            "--backend", "exact", "--trials", "200", "--seed", "1")
    assert code == 0
    assert out["failures"] == 0 and out["max_residual"] == 0 and out["trials"] == 200


def test_check_theorem1_exhaustive(capsys):
    code, out, _ = run_json(capsys, "check", "theorem1", "--d", "3", "--n-max", "5",
                            "--trials", "20")
    assert code == 0 and out["failures"] == 0
    # one u-power per grade 0..4
    assert out["equality_cases"] >= 5
    assert out["equality_exactly_on_u_powers"] is True


def test_check_adjoint_float(capsys):
    code, out, _ = run_json(capsys, "check", "adjoint", "--backend", "float", "--trials", "50")
    assert code == 0 and out["failures"] == 0
    assert out["max_residual"] <= 1e-12


@pytest.mark.parametrize("suite", ["adjoint", "ccr", "sum-ca"])
def test_check_other_suites_exact(capsys, suite):
    code, out, _ = run_json(capsys, "check", suite, "--trials", "30")
    assert code == 0 and out["failures"] == 0 and out["max_residual"] == 0


def test_check_bad_config(capsys):
    assert run(capsys, "check", "theorem2", "--d", "0")[0] == 1
    assert run(capsys, "check", "theorem2", "--n-max", "0")[0] == 1
    assert run(capsys, "check", "nonsense")[0] == 1


def test_check_determinism(capsys):
    argv = ("check", "adjoint", "--backend", "float", "--trials", "40", "--seed", "99")
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second


def test_domain_counterexample_spec(capsys):
    code, out, _ = run_json(capsys, "domain", "--spec", "fact(n)^1 * n^-2")
    assert code == 0
    assert out["in_fock"]["converges"] is True
    assert out["in_sqrtN_domain"]["converges"] is False
    assert out["K"] == 1
    assert out["in_sqrtN_domain"]["crossing_N"] <= 100_000
    last = out["witnesses"][-1]
    assert last["series"] == "sqrtN" and last["N"] == 100_000 and last["sum"] > 12


def test_domain_factorial_decay(capsys):
    code, out, _ = run_json(capsys, "domain", "--spec", "fact(n)^-1")
    assert code == 0
    assert out["in_fock"]["converges"] and out["in_sqrtN_domain"]["converges"]


def test_domain_syntax_error(capsys):
    code, out, err = run(capsys, "domain", "--spec", "n^^2")
    assert code == 1 and out == ""
    assert "position 2" in err
    # caret sits under the offending character
    lines = err.splitlines()
    assert lines[-1].index("^") - lines[-2].index("n") == 2


def test_domain_custom_cutoffs(capsys):
    code, out, _ = run_json(capsys, "domain", "--spec", "fact(n)^1 * n^-2", "--N", "10,100")
    assert code == 0 and [w["N"] for w in out["witnesses"] if w["series"] == "norm"] == [10, 100]
    assert run(capsys, "domain", "--spec", "n^-2", "--N", "100,10")[0] == 1


def test_counterexample_d3(capsys):
    code, out, _ = run_json(capsys, "counterexample", "--d", "3")
    assert code == 0
    assert out["annihilator_norm_sq"] == pytest.approx(1 + 1 / 2 + 1 / 3, rel=1e-12)
    assert out["v_norm_sq"] == 3
    assert all(out["checks"].values())


def test_counterexample_d1(capsys):
    code, out, _ = run_json(capsys, "counterexample", "--d", "1")
    assert code == 0
    for key in ("norm_sq", "number_sqrt_norm_sq", "annihilator_norm_sq", "v_norm_sq"):
        assert out[key] == pytest.approx(1.0)


def test_counterexample_d12(capsys):
    code, out, _ = run_json(capsys, "counterexample", "--d", "12")
    assert code == 0
    harmonic = math.fsum(1 / n for n in range(1, 13))
    assert out["number_sqrt_norm_sq"] == pytest.approx(harmonic, rel=1e-12)
    assert out["number_sqrt_norm_sq"] == pytest.approx(3.1032, abs=1e-4)
    oracle = partial_sum(SeqSpec(a=-2), 12).value
    assert out["norm_sq"] == pytest.approx(oracle, rel=1e-12)
    assert out["norm_sq"] == pytest.approx(1.565, abs=1e-3)


def test_counterexample_errors(capsys):
    assert run(capsys, "counterexample", "--d", "4", "--n-max", "3")[0] == 1
    assert run(capsys, "counterexample", "--d", "3", "--v", "1,2")[0] == 1
    assert run(capsys, "counterexample", "--d", "3", "--v", "1,x,2")[0] == 1


def test_counterexample_custom_v(capsys):
    code, out, _ = run_json(capsys, "counterexample", "--d", "2", "--v", "1/2,-3")
    assert code == 0
    assert out["annihilator_norm_sq"] == pytest.approx(0.25 + 9 / 2)


def flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from flatten(v, f"{prefix}.{k}" if prefix else k)
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from flatten(v, f"{prefix}.{i}" if prefix else str(i))
    else:
        yield prefix, obj


@pytest.mark.parametrize("argv", [
    ("counterexample", "--d", "5"),
    ("domain", "--spec", "fact(n)^1 * n^-2", "--N", "10,1000"),
    ("check", "ccr", "--trials", "10"),
])
def test_csv_matches_json(capsys, argv):
    _, as_json, _ = run_json(capsys, *argv)
    _, text, _ = run(capsys, *argv, "--output", "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["key", "value"]
    from_csv = {}
    for key, value in rows[1:]:
        try:
            from_csv[key] = json.loads(value)
        except json.JSONDecodeError:
            from_csv[key] = value
    assert from_csv == dict(flatten(as_json))


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fockbench", "domain", "--spec", "n^^2"],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and "position 2" in proc.stderr and proc.stdout == ""
    proc = subprocess.run([sys.executable, "-m", "fockbench", "counterexample", "--d", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["d"] == 2
