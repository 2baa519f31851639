import json
import subprocess
import sys

import pytest

from powmon.cli import run
from powmon.finset import parse

X = "{0,1,4,5,10,11,12,14,15,16,19,20,21,22,25,26,29,30}"


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sumset(capsys):
    assert call(capsys, "sumset", "{0}", "{0}") == (0, "{0}\n", "")
    code, out, _ = call(capsys, "sumset", "{0,1,4,5}", "{0,3}")
    assert out.strip() == "{0,1,3,4,5,7,8}"


def test_factorize(capsys):
    code, out, _ = call(capsys, "factorize", "{0,1,2,3}")
    assert code == 0
    assert out.splitlines() == ["{0,1}*{0,2}", "{0,1}*{0,1}*{0,1}", "lengths: {2,3}"]


def test_factorize_json(capsys):
    code, out, _ = call(capsys, "factorize", "{0,1,2,3}", "--json")
    obj = json.loads(out)
    assert obj["lengths"] == [2, 3]
    assert len(obj["factorizations"]) == 2
    assert obj["factorizations"][0] == {"word": [{"elements": [0, 1]}, {"elements": [0, 2]}]}


def test_global_json_flag(capsys):
    code, out, _ = call(capsys, "--json", "lengthset", X)
    assert json.loads(out) == {"lengths": [2, 3, 4]}


@pytest.mark.parametrize(
    "argv, code, first",
    [
        (["atom", "{0,1,2,7,9}"], 0, "true"),
        (["atom", "{0,1,2}"], 1, "false"),
        (["relcanc", "{0,7}"], 0, "true"),
        (["relcanc", "{0,1,2,3}"], 1, "false"),
        (["relprime", "{0,1}", "{0,2}"], 0, "true"),
        (["relprime", "{0,1}", "{0,1,2}"], 1, "false"),
        (["gcdcrit", "{0,1,3,4,5,7,8}"], 0, "true"),
        (["gcdcrit", "{0,1,2,3}"], 1, "false"),
    ],
)
def test_predicate_exit_codes(capsys, argv, code, first):
    got, out, _ = call(capsys, *argv)
    assert got == code
    assert out.splitlines()[0] == first


def test_relcanc_witness_line(capsys):
    _, out, _ = call(capsys, "relcanc", "{0,1,2,3}")
    assert out.splitlines()[1] == "witness: {0,1}+{0,2} = {0,1}+{0,1,2}"


def test_divisors_lengthset_elasticity(capsys):
    assert call(capsys, "divisors", "{0,1,2}")[1].splitlines() == ["{0}", "{0,1}", "{0,1,2}"]
    assert call(capsys, "lengthset", X)[1] == "{2,3,4}\n"
    assert call(capsys, "elasticity", X)[1] == "2\n"
    assert call(capsys, "elasticity", "{0}")[1] == "1\n"


def test_construct_elasticity(capsys):
    code, out, _ = call(capsys, "construct-elasticity", "3/2", "--verify")
    assert code == 0
    assert out.splitlines() == ["{0,1,3,4,5,7,8}", "rho = 3/2 (verified)"]


def test_construct_elasticity_falls_back_to_certificate(capsys):
    code, out, _ = call(capsys, "construct-elasticity", "7/3", "--verify", "--budget", "20000")
    assert code == 0
    assert out.splitlines()[-1] == "rho = 7/3 (certified)"


def test_family_compose_generators_interval(capsys):
    code, out, _ = call(capsys, "family", "2", "--verify")
    assert code == 0 and out.splitlines()[-1] == "lengths: {2,4}"
    code, out, _ = call(capsys, "family", "1", "--json")
    assert json.loads(out)["S"][1] == {"elements": [0, 1, 3, 4, 5, 7, 8]}
    code, out, _ = call(capsys, "compose", "{0,1,3,4,5,7,8}", "{0,1}", "--verify")
    assert code == 0 and out.splitlines()[-1] == "lengths: {3,4} (verified)"
    code, out, _ = call(capsys, "generators", "2")
    assert out.splitlines() == ["{0,1,3,4}", "lengths: {2}"]
    code, out, _ = call(capsys, "interval", "3", "--verify")
    assert code == 0 and out.splitlines()[-1] == "lengths: {3,4,5} (verified)"


def test_distant_copy_command(capsys):
    code, out, _ = call(capsys, "prop36", X, "61")
    assert code == 0
    assert out.splitlines()[0] == f"bases: {{0,1,10,11}} {X}"
    assert out.splitlines()[-1] == "lengths: {3,4,5}"


def test_density(capsys):
    assert call(capsys, "density", "1")[1].splitlines()[:2] == ["atoms: 1", "sets: 2"]
    code, out, _ = call(capsys, "density", "3", "--json")
    obj = json.loads(out)
    assert (obj["atoms"], obj["sets"], obj["ratio"]) == (5, 8, "5/8")
    a = call(capsys, "density", "40", "--samples", "50", "--seed", "1")
    b = call(capsys, "density", "40", "--samples", "50", "--seed", "1")
    assert a == b and a[0] == 0


def test_density_smoke_16(capsys):
    code, out, _ = call(capsys, "density", "16", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["sets"] == 2**16 and 0 < obj["atoms"] < obj["sets"]


def test_reference_suite_command(capsys):
    code, out, _ = call(capsys, "verify-paper")
    assert code == 0
    lines = out.splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert lines[-1] == f"{len(lines) - 1}/{len(lines) - 1} items passed"
    code, out, _ = call(capsys, "verify-paper", "--json")
    obj = json.loads(out)
    assert obj["passed"] and all(item["passed"] for item in obj["items"])


@pytest.mark.parametrize(
    "argv, needle",
    [
        (["atom", "{1,2}"], "argument SET"),
        (["atom", "0,1"], "argument SET"),
        (["relprime", "{0,1}", "{0,x}"], "argument C"),
        (["compose", "{0,1,2,3}", "{0,1}"], "argument X"),
        (["compose", "{0,1}", "{0,3,6,9}"], "argument Y"),
        (["prop36", "{0,1}", "2"], "argument N"),
        (["density", "21"], "argument max_element"),
        (["family", "2", "--n", "3", "14"], "argument --n"),
        (["interval", "1"], "argument K"),
        (["construct-elasticity", "1/2"], "argument Q"),
        (["construct-elasticity", "abc"], "argument Q"),
        (["lengthset", X, "--budget", "3"], "budget"),
        (["lengthset", X, "--budget", "-3"], "argument --budget"),
        (["nosuch"], "invalid choice"),
        ([], "required"),
    ],
)
def test_errors_exit_2(capsys, argv, needle):
    code, out, err = call(capsys, *argv)
    assert code == 2
    assert needle in err
    assert out == ""


def test_printed_sets_round_trip(capsys):
    _, out, _ = call(capsys, "family", "2")
    for line in out.splitlines():
        if "=" in line and "{" in line:
            text = line.split("=", 1)[1]
            assert str(parse(text)) == text


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "powmon", "sumset", "{0,1}", "{0,2}"], capture_output=True, text=True
    )
    assert res.returncode == 0 and res.stdout == "{0,1,2,3}\n"


def test_budget_env(monkeypatch, capsys):
    monkeypatch.setenv("POWMON_BUDGET", "3")
    code, _, err = call(capsys, "lengthset", X)
    assert code == 2 and "budget" in err
