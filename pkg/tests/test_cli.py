import io
import json
import subprocess
import sys

import pytest

from involutive_identity.cli import main
from test_configspace import LEFT


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_verify_symbolic():
    code, out, _ = run("verify", "--n", "2,2", "--symbolic-ab", "--mode", "symbolic")
    assert code == 0
    assert json.loads(out) == {"equal": True, "mode": "symbolic", "difference": "0"}


def test_verify_random_and_enumerate_modes():
    code, out, _ = run("verify", "--n", "1,1", "--mode", "random", "--trials", "20", "--seed", "3")
    assert code == 0 and json.loads(out)["trials"] == 20
    code, out, _ = run("verify", "--n", "1,1", "--alpha", "1", "--beta", "2", "--mode", "enumerate")
    assert code == 0 and json.loads(out)["mode"] == "enumerative"
    code, out, _ = run(
        "verify", "--n", "2", "--alpha", "1", "--beta", "2", "--mode", "enumerate", "--x", "1/2", "--y", "3"
    )
    assert code == 0


def test_verify_concrete_values_text():
    code, out, _ = run("verify", "--n", "1", "--alpha", "1", "--beta", "1", "--x", "1", "--y", "1", "--format", "text")
    assert code == 0 and out.splitlines()[0] == "equal: true"


def test_audit_figure_instance():
    code, out, _ = run("audit", "--n", "2,2", "--alpha", "2", "--beta", "4")
    assert code == 0
    data = json.loads(out)
    assert data["totals"]["configurations"] == 23490
    assert all(data["checks"].values())


def test_count():
    assert run("count", "--n", "1", "--alpha", "1", "--beta", "1") == (0, "5\n", "")
    code, out, _ = run("count", "--n", "2,2", "--alpha", "2", "--beta", "4", "--k", "2,1", "--format", "json")
    assert code == 0 and json.loads(out)["count"] == "5040"


def test_enumerate_outputs():
    code, out, _ = run("enumerate", "--n", "1", "--alpha", "1", "--beta", "1")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 5
    assert json.loads(lines[0]) == {
        "m": 1, "n": [1], "alpha": 1, "beta": 1,
        "letters": ["b1", "a"], "marks": ["y1", "1"], "circled": [1],
    }
    code, out, _ = run("enumerate", "--n", "1", "--alpha", "1", "--beta", "1", "--format", "text")
    assert out.splitlines()[0] == "(b1:y1) a"
    code, out, _ = run("enumerate", "--n", "2,2", "--alpha", "2", "--beta", "4", "--k", "2,1", "--format", "json")
    assert len(json.loads(out)) == 5040


def test_fixed_points_and_reduce():
    code, out, _ = run("fixed-points", "--n", "2,2", "--alpha", "2", "--beta", "4")
    data = json.loads(out)
    assert code == 0 and data["fixed_points"] == 930 and data["equal"]
    code, out, _ = run("fixed-points", "--n", "1", "--alpha", "1", "--beta", "1", "--format", "jsonl")
    assert code == 0 and len(out.splitlines()) == 3
    code, out, _ = run("reduce", "--n", "4")
    data = json.loads(out)
    assert code == 0 and data["to_binomial"]["equal"] and data["to_delannoy"]["equal"]


@pytest.mark.parametrize(
    "argv",
    [
        ["enumerate", "--n", "1", "--alpha", "2", "--beta", "1", "--format", "jsonl"],
        ["audit", "--n", "1", "--alpha", "2", "--beta", "1"],
        ["count", "--n", "1", "--alpha", "2", "--beta", "1"],
        ["fixed-points", "--n", "1", "--alpha", "2", "--beta", "1"],
        ["audit", "--n", "2,2", "--alpha", "2", "--beta", "4", "--max-configs", "100"],
        ["audit", "--n", "1"],
        ["verify", "--n", "1,x"],
        ["verify", "--n", "1", "--x", "1,2"],
        ["verify", "--n", "1", "--symbolic-ab", "--alpha", "3"],
        ["verify", "--n", "1", "--mode", "random", "--trials", "0"],
        ["count", "--n", "2", "--alpha", "1", "--beta", "1", "--k", "3"],
        ["reduce", "--n", "-1"],
        ["bogus"],
        [],
    ],
)
def test_usage_errors_exit_2(argv):
    code, out, err = run(*argv)
    assert code == 2
    assert out == ""


def test_usage_error_diagnostic_is_one_line():
    code, _, err = run("count", "--n", "1", "--alpha", "2", "--beta", "1")
    assert code == 2 and err.count("\n") == 1 and err.startswith("error:")


def test_enumerate_ingestion(tmp_path):
    good = tmp_path / "good.jsonl"
    good.write_text(json.dumps(LEFT.to_json()) + "\n")
    code, out, _ = run("enumerate", "--n", "2,2", "--input", str(good))
    assert code == 0 and json.loads(out) == LEFT.to_json()

    bad_config = dict(LEFT.to_json(), marks=["1", "x2", "1", "y1", "y2", "1", "y1", "1"], circled=[7])
    bad = tmp_path / "bad.jsonl"
    bad.write_text(json.dumps(bad_config) + "\n")
    code, out, err = run("enumerate", "--n", "2,2", "--input", str(bad))
    assert code == 2 and "circled outside first segment" in err


def test_failed_check_exits_1(monkeypatch):
    import involutive_identity.cli as cli
    from involutive_identity.multipoly import ONE

    real = cli.multinomial_rhs
    monkeypatch.setattr(cli, "multinomial_rhs", lambda inst: real(inst) + ONE)
    code, out, _ = run("fixed-points", "--n", "1", "--alpha", "1", "--beta", "1")
    assert code == 1 and json.loads(out)["equal"] is False

    import involutive_identity.identity as identity

    monkeypatch.setattr(identity, "multinomial_rhs", lambda inst: real(inst) + ONE)
    code, out, _ = run("verify", "--n", "1")
    assert code == 1 and json.loads(out)["difference"] == "-1"


def test_audit_failure_exits_1(monkeypatch):
    import involutive_identity.involution as inv

    monkeypatch.setattr(inv, "multinomial_lhs", lambda inst: inv.multinomial_rhs(inst) * 2)
    code, out, _ = run("audit", "--n", "1", "--alpha", "1", "--beta", "1")
    assert code == 1 and json.loads(out)["checks"]["sums_match"] is False


def test_module_entry_point_is_deterministic():
    argv = [sys.executable, "-m", "involutive_identity", "audit", "--n", "1,1", "--alpha", "1", "--beta", "2"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["totals"]["configurations"] == 90
    rnd = [sys.executable, "-m", "involutive_identity", "verify", "--n", "2,1", "--mode", "random", "--trials", "30"]
    assert subprocess.run(rnd, capture_output=True).stdout == subprocess.run(rnd, capture_output=True).stdout
