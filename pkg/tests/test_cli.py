import json
import subprocess
import sys

import pytest

from ffcn.cli import main
from ffcn.verify import golden_text


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_class_number(capsys):
    code, out, _ = run(capsys, "class-number", "--q", "3", "--d", "t^3")
    doc = json.loads(out)
    assert code == 0
    assert (doc["h"], doc["w"]) == (3, 1)
    assert doc["d0"] == "t" and doc["conductor"] == "t"
    assert doc["h_over_w"] == {"num": "3", "den": "1"}
    assert doc["header"]["seed"] == 1729


def test_h_zero(capsys):
    code, out, _ = run(capsys, "h-zero", "--q", "3", "--nplus", "1", "--nminus", "t^2+t")
    doc = json.loads(out)
    assert code == 0
    assert doc["H0"] == {"num": "-1", "den": "2"}
    assert doc["volume"] == {"num": "4", "den": "1"}
    assert doc["expected"] == -2 and doc["identity_holds"] is True


def test_theta_lambda_level_assumption(capsys):
    code, out, err = run(capsys, "theta-lambda", "--q", "3", "--frakd", "t^2+1", "--frakn", "t", "--max-deg", "2")
    assert code == 2 and out == ""
    assert "deg(d- n-) = 0" in err


def test_theta_lambda_golden(capsys):
    code, out, _ = run(capsys, "theta-lambda", "--q", "3", "--frakd", "t^2+1", "--frakn", "t+1", "--max-deg", "2")
    assert code == 0
    assert out == golden_text()


def test_theta_lambda_csv(capsys):
    code, out, _ = run(
        capsys, "theta-lambda", "--q", "3", "--frakd", "t^2+1", "--frakn", "t+1", "--max-deg", "1", "--output", "csv"
    )
    lines = out.splitlines()
    assert code == 0
    assert lines[0].startswith("# theta-lambda") and "seed=1729" in lines[0]
    assert lines[1] == "index,numerator,denominator"
    assert lines[2] == "0,4,1"
    assert len(lines) == 3 + 8


def test_theta_o(capsys):
    code, out, _ = run(capsys, "theta-o", "--q", "3", "--nminus", "t^2+t", "--max-deg", "0")
    doc = json.loads(out)
    assert code == 0
    assert doc["constant_term"] == {"num": "-1", "den": "2"}
    assert [c["index"] for c in doc["coefficients"]] == ["1", "2"]


def test_theta_o_bad_levels(capsys):
    code, _, err = run(capsys, "theta-o", "--q", "3", "--nminus", "t", "--max-deg", "0")
    assert code == 2 and "even" in err


def test_hurwitz_both_strategies(capsys):
    code, out, _ = run(capsys, "hurwitz", "--q", "3", "--d", "t^3")
    doc = json.loads(out)
    assert code == 0 and doc["agree"] is True
    assert doc["values"]["definition"] == doc["values"]["product"] == {"num": "4", "den": "1"}


def test_split_level(capsys):
    code, out, _ = run(capsys, "split-level", "--q", "3", "--frakd", "t^2+1", "--frakn", "t+1")
    doc = json.loads(out)
    assert code == 0
    assert doc["n_minus"] == "t+1" and doc["d_minus"] == "t^2+1"
    assert all(doc["verdicts"].values())


def test_embed_local(capsys):
    code, out, _ = run(capsys, "embed-local", "--kind", "inert", "--level", "0", "--quat", "division-maximal")
    assert code == 0 and json.loads(out)["embed_count"] == 2
    code, _, _ = run(capsys, "embed-local", "--kind", "inert", "--level", "0", "--quat", "division-hereditary")
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["class-number", "--q", "4", "--d", "t"],
        ["class-number", "--q", "3", "--d", "t^2+1"],
        ["class-number", "--q", "3", "--d", "t^"],
        ["class-number", "--d", "t"],
        ["hurwitz", "--q", "3", "--nplus", "t^2", "--d", "t"],
        ["theta-o", "--q", "3", "--nminus", "t^2+t", "--max-deg", "9"],
    ],
)
def test_configuration_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("ffcn: error:")


def test_seed_env_override(capsys, monkeypatch):
    monkeypatch.setenv("FFCN_SEED", "42")
    _, out, _ = run(capsys, "class-number", "--q", "3", "--d", "t", "--seed", "7")
    assert json.loads(out)["header"]["seed"] == 42
    monkeypatch.setenv("FFCN_SEED", "x")
    code, _, _ = run(capsys, "class-number", "--q", "3", "--d", "t")
    assert code == 2


def test_out_file(capsys, tmp_path):
    target = tmp_path / "table.json"
    code, out, _ = run(
        capsys, "theta-lambda", "--q", "3", "--frakd", "t^2+1", "--frakn", "t+1", "--max-deg", "2", "--out", str(target)
    )
    assert code == 0 and out == ""
    assert target.read_text() == golden_text()


def test_byte_identical_reruns(capsys):
    argv = ["theta-o", "--q", "3", "--nminus", "t^2+t", "--max-deg", "2"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_verify_suite(capsys):
    code, out, err = run(capsys, "verify", "--suite", "hurwitz")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] is True
    assert len(doc["criteria"]) == 2
    assert err.count("[PASS]") == 2


def test_verify_failure_exit_1(capsys, monkeypatch):
    import ffcn.verify as verify

    def broken(seed=0):
        res = verify.CriterionResult("broken")
        res.check("x", 1, 2)
        return res

    monkeypatch.setitem(verify.SUITES, "hurwitz", [broken])
    code, out, err = run(capsys, "verify", "--suite", "hurwitz", "--output", "csv")
    assert code == 1
    assert "[FAIL] broken" in err
    assert out.splitlines()[1] == "criterion,label,expected,actual,ok"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ffcn", "class-number", "--q", "3", "--d", "2*t^2+2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["h"] == 2
