"""Tests for random inputs, JSON documents, scenarios and the scenario runner."""

from dataclasses import replace
from fractions import Fraction
import json

import pytest

from germ_calculus.calculus.parser import parse_expr
from germ_calculus.errors import MalformedInput, UnknownScenario
from germ_calculus.harness import serialization as io
from germ_calculus.harness.random_jets import (
    generate_random_jet,
    random_environment,
    random_even_jet,
    random_implicit_input,
)
from germ_calculus.harness.runner import ScenarioRunner, run_scenario
from germ_calculus.harness.scenarios import HEURISTIC_NOTE, exp_instance, run_checks, scenario_names
from germ_calculus.implicit.systems import check_solution
from germ_calculus.models.gaussian import I, ONE, ZERO, GaussianRational
from germ_calculus.models.jet import Jet
from germ_calculus.models.profile import PROFILE_PRESETS, default_order, load_profile

EXPECTED_SCENARIOS = {
    "theorem-a-coeffs",
    "deram-identity",
    "elementary-shifts",
    "theorem-b-shift",
    "faa-di-bruno",
    "implicit-backsub",
    "closure-sizes",
    "blowdown-roundtrip",
    "vanishing-falsification",
    "exp-implicit",
    "linear-reduction",
    "nonlocality",
}


# --- profiles ---

def test_presets():
    assert PROFILE_PRESETS["Full"].order == 16
    assert PROFILE_PRESETS["Quick"].order < PROFILE_PRESETS["Full"].order


def test_order_from_environment(monkeypatch):
    monkeypatch.setenv("GERMCALC_ORDER", "7")
    assert default_order() == 7
    assert load_profile("Full").order == 7
    assert load_profile("Full", order=3).order == 3
    monkeypatch.setenv("GERMCALC_ORDER", "seven")
    assert default_order() == 16


def test_profile_overrides_skip_none(monkeypatch):
    monkeypatch.delenv("GERMCALC_ORDER", raising=False)
    p = load_profile("Quick", cases=None, trials=9)
    assert p.cases == PROFILE_PRESETS["Quick"].cases
    assert p.trials == 9
    with pytest.raises(KeyError):
        load_profile("Nope")


# --- random inputs ---

def test_random_jet_is_seeded():
    a = generate_random_jet(2, 4, 17, coeff_bound=3)
    assert a == generate_random_jet(2, 4, 17, coeff_bound=3)
    assert a != generate_random_jet(2, 4, 18, coeff_bound=3)
    assert len(a.coeffs) == 15


def test_random_jet_bound():
    with pytest.raises(MalformedInput):
        generate_random_jet(1, 3, 0, coeff_bound=0)


def test_special_random_inputs():
    even = random_even_jet(8, 3)
    assert all(alpha[0] % 2 == 0 for alpha in even.coeffs)
    f = random_implicit_input(2, 4, 5, base=(ONE, I))
    assert f.value == ZERO
    assert f.coefficient((0, 1))


def test_random_environment_fits_operator_domains():
    e = parse_expr("(poly-apply (- y1 y2) (deram 3 (germ g 0)) (compose (germ f 1) (germ h 0)))")
    env = random_environment(e, 2, seed=4)
    (g,) = env["g"]
    (h,) = env["h"]
    assert g.order == 6
    assert all(alpha[0] % 3 == 0 for alpha in g.coeffs)
    assert h.value == ONE


# --- documents ---

def test_jet_document_layout():
    f = Jet(2, 2, (ZERO, I), {(0, 1): Fraction(1, 2), (1, 0): GaussianRational(0, -3), (0, 0): 2})
    doc = io.jet_to_dict(f)
    assert doc["base"] == [["0/1", "0/1"], ["0/1", "1/1"]]
    assert [c["alpha"] for c in doc["coeffs"]] == [[0, 0], [1, 0], [0, 1]]
    assert doc["coeffs"][2] == {"alpha": [0, 1], "re": "1/2", "im": "0/1"}
    assert io.jet_from_dict(json.loads(io.dumps(doc))) == f


def test_written_documents_are_stable(tmp_path):
    f = generate_random_jet(2, 3, 8)
    path = tmp_path / "f.json"
    io.write_document(str(path), io.jet_to_dict(f))
    again = io.dumps(io.jet_to_dict(io.load_jets(str(path))[0]))
    assert path.read_text(encoding="utf-8") == again


def test_pair_document():
    F, psi = exp_instance(4)
    doc = json.loads(io.dumps(io.pair_to_dict(F, psi)))
    assert doc["system"]["size"] == 1 and doc["system"]["vars"] == 2
    G, chi = io.pair_from_dict(doc)
    assert G.components == F.components
    assert check_solution(G, chi).passed


def test_relation_and_chart_documents():
    rel = io.relation_from_dict({"d": 2, "coefficients": [0, 1], "offset": "1/2"})
    assert rel.d == 2 and rel.coefficients == (0, 1) and rel.offset == Fraction(1, 2)
    assert io.chart_from_dict({"lambda": "inf"}).is_infinite
    assert io.chart_to_dict(io.chart_from_dict({"lambda": "1/2-i"})) == {"lambda": "1/2-i"}


@pytest.mark.parametrize(
    "doc",
    [
        {"dim": 1, "order": 1, "base": [["0", "0"]]},
        {"dim": 1, "order": 1, "base": [["0", "0"]], "coeffs": [{"alpha": [0], "re": 1}]},
        {"dim": 1, "order": 1, "base": [["x", "0"]], "coeffs": []},
        [1, 2],
    ],
)
def test_malformed_jet_documents(doc):
    with pytest.raises(MalformedInput):
        io.jet_from_dict(doc)


def test_load_errors(tmp_path):
    with pytest.raises(MalformedInput):
        io.load_document(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(MalformedInput):
        io.load_jets(str(bad))


# --- scenarios ---

def test_registry():
    assert set(scenario_names()) == EXPECTED_SCENARIOS


@pytest.mark.parametrize("name", sorted(EXPECTED_SCENARIOS))
def test_scenario_passes(name, quick_profile):
    report = run_checks(name, quick_profile)
    failed = [f"{c.name}: {c.detail}" for c in report.checks if not c.passed]
    assert report.checks
    assert not failed


def test_elementary_shifts_start_at_zero(quick_profile):
    checks = {c.name: c for c in run_checks("elementary-shifts", quick_profile).checks}
    assert all(c.passed for c in checks.values())
    for name in ("schwarz", "partial", "mdiv", "deram-2", "deram-3", "compose"):
        assert f"for 0 <= n <= {quick_profile.order}" in checks[name].detail
    assert "for 1 <= n" in checks["implicit"].detail
    assert "n = 0 excluded" in checks["implicit"].detail


def test_report_document(quick_profile):
    doc = run_checks("theorem-a-coeffs", quick_profile).to_dict()
    assert doc["note"] == HEURISTIC_NOTE
    assert doc["passed"] is True
    assert "workers" not in doc["profile"]
    assert [c["name"] for c in doc["checks"]] == sorted(c["name"] for c in doc["checks"])


def test_unknown_scenario(quick_profile):
    with pytest.raises(UnknownScenario):
        run_checks("no-such-scenario", quick_profile)
    with pytest.raises(UnknownScenario):
        run_scenario("no-such-scenario", quick_profile)


def test_runner_on_thread_pool(quick_profile):
    lines = []
    runner = ScenarioRunner(replace(quick_profile, workers=2), on_log=lines.append)
    reports = runner.run(["exp-implicit", "theorem-a-coeffs"])
    assert [r.scenario for r in reports] == ["exp-implicit", "theorem-a-coeffs"]
    assert all(r.passed for r in reports)
    assert runner.outcomes == {"exp-implicit": True, "theorem-a-coeffs": True}
    assert any(line.startswith("running ") for line in lines)


def test_merged_report_prefixes_checks(quick_profile, monkeypatch):
    from germ_calculus.harness import runner as runner_module

    monkeypatch.setattr(runner_module, "scenario_names", lambda: ["nonlocality", "theorem-a-coeffs"])
    report = run_scenario("all", quick_profile)
    assert report.scenario == "all"
    assert {c.name for c in report.checks} == {
        "nonlocality/witness",
        "theorem-a-coeffs/coefficients",
        "theorem-a-coeffs/classification",
        "theorem-a-coeffs/value-at-zero",
    }
