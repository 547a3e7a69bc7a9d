"""Tests for the germcalc command line."""

from fractions import Fraction
from math import factorial
import json

import pytest

from germ_calculus.cli import cli_main
from germ_calculus.harness import serialization as io
from germ_calculus.harness.random_jets import generate_random_jet
from germ_calculus.harness.scenarios import exp_instance
from germ_calculus.models.jet import exp_jet, truncate

EXP_QUOTIENT = "(mdiv (poly-apply (- y 1) (germ exp 0)))"


@pytest.fixture(autouse=True)
def _no_env_order(monkeypatch):
    monkeypatch.delenv("GERMCALC_ORDER", raising=False)


def _write(tmp_path, name, document):
    path = tmp_path / name
    io.write_document(str(path), document)
    return str(path)


def test_shift_text(capsys):
    assert cli_main(["shift", "--expr", "(deram 2 (germ g 0))", "--n", "6"]) == 0
    assert capsys.readouterr().out == "upper: 12, certified lower: 12\n"


def test_shift_json(capsys):
    assert cli_main(["shift", "--expr", "(partial 1 (germ g 0))", "--n", "3", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == {"n": 3, "upper": 4, "certified_lower": 4, "bound": "n+1", "N": 1}


def test_classify(capsys):
    assert cli_main(["classify", "--expr", EXP_QUOTIENT]) == 0
    assert capsys.readouterr().out == "C* (∅-definable), shift n+1\n"
    assert cli_main(["classify", "--expr", "(deram 2 (germ f 0))", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == {"class": "D*", "empty_definable": True, "shift": "2n", "N": None}


def test_apply_with_germ_file(tmp_path, capsys):
    path = _write(tmp_path, "exp.json", io.jet_to_dict(exp_jet(9)))
    assert cli_main(["apply", "--expr", EXP_QUOTIENT, "--order", "8", "--germ", f"exp={path}"]) == 0
    out = io.jet_from_dict(json.loads(capsys.readouterr().out))
    assert out.order == 8
    assert all(out.coefficient((n,)) == Fraction(1, factorial(n + 1)) for n in range(9))


def test_apply_reports_short_input(tmp_path, capsys):
    path = _write(tmp_path, "exp.json", io.jet_to_dict(exp_jet(8)))
    assert cli_main(["apply", "--expr", EXP_QUOTIENT, "--order", "8", "--germ", f"exp={path}"]) == 1
    assert capsys.readouterr().err.startswith("error: InsufficientOrder: apply_expr:")


def test_parse_error_exit_code(capsys):
    assert cli_main(["classify", "--expr", "(germ f"]) == 1
    assert "error: ParseError" in capsys.readouterr().err


def test_generate_to_file(tmp_path):
    out = tmp_path / "g.json"
    assert cli_main(["generate", "--dim", "2", "--order", "3", "--seed", "5", "--base", "1", "i", "--output", str(out)]) == 0
    f = io.load_jets(str(out))[0]
    assert f == generate_random_jet(2, 3, 5, base=f.base)
    assert [str(a) for a in f.base] == ["1", "i"]


def test_blowup_then_blowdown(tmp_path, capsys):
    f = generate_random_jet(2, 6, 3)
    src = _write(tmp_path, "f.json", io.jet_to_dict(f))
    up = tmp_path / "g.json"
    assert cli_main(["blowup", src, "--chart", "inf", "--output", str(up)]) == 0
    assert cli_main(["blowdown", str(up), "--chart", "inf", "--order", "3"]) == 0
    assert io.jet_from_dict(json.loads(capsys.readouterr().out)) == truncate(f, 3)


def test_implicit_check_and_closure(tmp_path, capsys):
    path = _write(tmp_path, "pair.json", io.pair_to_dict(*exp_instance(6)))
    assert cli_main(["implicit", "check", path]) == 0
    assert json.loads(capsys.readouterr().out)["passed"] is True
    assert cli_main(["implicit", "derivative", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["system"]["size"] == 2


def test_implicit_reduce_needs_relation(tmp_path, capsys):
    path = _write(tmp_path, "pair.json", io.pair_to_dict(*exp_instance(6)))
    assert cli_main(["implicit", "reduce", path]) == 1
    assert capsys.readouterr().err.startswith("error: MalformedInput")


def test_implicit_compose_needs_two_files(tmp_path, capsys):
    path = _write(tmp_path, "pair.json", io.pair_to_dict(*exp_instance(6)))
    assert cli_main(["implicit", "compose", path]) == 1
    assert cli_main(["implicit", "compose", path, path]) == 0


def test_verify_has_no_text_format(capsys):
    assert cli_main(["verify", "theorem-a-coeffs", "--preset", "Quick", "--format", "text"]) == 2
    assert "invalid choice" in capsys.readouterr().err


def test_verify_json(capsys):
    assert cli_main(["verify", "nonlocality", "--preset", "Quick"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["passed"] is True
    assert doc["profile"]["preset_name"] == "Quick"


def test_verify_unknown_scenario(capsys):
    assert cli_main(["verify", "no-such-scenario"]) == 1
    assert "error: UnknownScenario" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["shift", "--expr", "(germ f 0)"],
        ["blowup", "f.json", "--chart", "1/0"],
        ["apply", "--expr", "(germ f 0)", "--germ", "f"],
        ["generate", "--order", "-1"],
        ["generate", "--dim", "0"],
        ["generate", "--coeff-bound", "0"],
    ],
)
def test_usage_errors(argv, capsys):
    assert cli_main(argv) == 2
    assert capsys.readouterr().err
