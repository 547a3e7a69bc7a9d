"""Tests for classification, shift bounds and expression evaluation."""

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from germ_calculus.calculus.expr import OperatorClass, classify
from germ_calculus.calculus.interpreter import (
    apply_expr,
    certified_shift_lower_bound,
    measure_shift_lower_bound,
    vanishing_stability_test,
)
from germ_calculus.calculus.parser import parse_expr
from germ_calculus.calculus.shift import shift_bound
from germ_calculus.cli import cli_main
from germ_calculus.errors import BaseMismatch, InsufficientOrder, MalformedInput, OperatorDomainError, UnboundGerm
from germ_calculus.harness import serialization as io
from germ_calculus.harness.random_jets import generate_random_jet, random_environment
from germ_calculus.models.gaussian import ONE, ZERO
from germ_calculus.models.jet import Jet, exp_jet, partial_derivative
from germ_calculus.operators.elementary import compose

EXP_QUOTIENT = "(mdiv (poly-apply (- y 1) (germ exp 0)))"


@pytest.mark.parametrize(
    "text, op_class, empty_definable",
    [
        (EXP_QUOTIENT, OperatorClass.C, True),
        ("(compose (germ f 0) (poly (+ z 1/2) 0))", OperatorClass.B, False),
        ("(schwarz (compose (germ f 0) (gpoly (* i z) 0)))", OperatorClass.B, True),
        ("(mdiv (deram 2 (germ f [0 0])))", OperatorClass.D, True),
    ],
)
def test_classify(text, op_class, empty_definable):
    c = classify(parse_expr(text))
    assert c.op_class is op_class
    assert c.empty_definable is empty_definable


@pytest.mark.parametrize(
    "text, n, expected, described, constant",
    [
        ("(schwarz (germ g 0))", 5, 5, "n", 0),
        ("(partial 1 (mdiv (germ f [0 0])))", 4, 6, "n+2", 2),
        ("(deram 2 (germ g 0))", 6, 12, "2n", None),
        ("(deram 3 (partial 1 (germ g 0)))", 2, 7, "3n+1", None),
        ("(poly-apply (- y1 y2) (partial 1 (germ f 0)) (deram 2 (germ f 0)))", 3, 6, "max(2n, n+1)", None),
        ("(gpoly (* i z) 0)", 7, 0, "0", 0),
    ],
)
def test_shift_bound(text, n, expected, described, constant):
    bound = shift_bound(parse_expr(text))
    assert bound.evaluate(n) == expected
    assert bound.describe() == described
    assert bound.constant == constant


def test_required_orders_per_leaf():
    e = parse_expr("(compose (partial 2 (germ f [0 0])) (germ g 0) (germ h 0))")
    orders = shift_bound(e).required_orders(3)
    assert orders[("f", (ZERO, ZERO))] == 4
    assert orders[("g", (ZERO,))] == 3


def test_exp_quotient_coefficients():
    out = apply_expr(parse_expr(EXP_QUOTIENT), {"exp": exp_jet(11)}, 10)
    assert out.order == 10
    assert all(out.coefficient((n,)) == Fraction(1, factorial(n + 1)) for n in range(11))


def test_apply_checks_input_orders():
    with pytest.raises(InsufficientOrder) as info:
        apply_expr(parse_expr(EXP_QUOTIENT), {"exp": exp_jet(10)}, 10)
    assert info.value.required == 11


def test_apply_unbound_and_wrong_base():
    e = parse_expr("(schwarz (germ f 1))")
    with pytest.raises(UnboundGerm):
        apply_expr(e, {}, 3)
    with pytest.raises(BaseMismatch):
        apply_expr(e, {"f": exp_jet(3)}, 3)


def test_same_name_at_two_points():
    e = parse_expr("(poly-apply (- y1 y2) (germ f 0) (compose (germ f 1) (poly (+ z 1) 0)))")
    at_zero = Jet(1, 4, (0,), {(0,): 1, (1,): 2})
    at_one = Jet(1, 4, (1,), {(0,): 1, (1,): 2})
    out = apply_expr(e, {"f": [at_zero, at_one]}, 4)
    assert out.is_zero()


def test_partial_matches_direct_derivative():
    f = generate_random_jet(2, 6, 3, base=(ONE, ZERO))
    out = apply_expr(parse_expr("(partial 2 (germ f [1 0]))"), {"f": f}, 5)
    assert out == partial_derivative(f, 2)


@pytest.mark.parametrize(
    "text, n, expected",
    [
        ("(partial 1 (germ g 0))", 5, 6),
        ("(mdiv (germ g 0))", 4, 5),
        ("(deram 2 (germ g 0))", 6, 12),
        ("(implicit (germ h [0 0]))", 3, 3),
    ],
)
def test_certified_lower_bound_is_exact(text, n, expected):
    e = parse_expr(text)
    env = random_environment(e, n, seed=11)
    assert certified_shift_lower_bound(e, env, n) == expected == shift_bound(e).evaluate(n)


def test_perturbation_above_bound_is_invisible():
    e = parse_expr("(schwarz (germ g 0))")
    env = random_environment(e, 4, seed=2)
    assert measure_shift_lower_bound(e, env, 4, 4)
    assert not measure_shift_lower_bound(e, env, 4, 5)


def test_trivial_vanishing_is_stable():
    e = parse_expr("(poly-apply (- y1 y2) (germ f 0) (germ f 0))")
    f = generate_random_jet(1, 8, 5)
    report = vanishing_stability_test(e, {"f": f}, 3, trials=5, tested_order=6)
    assert report.stable
    assert report.trials == 5


def test_stability_needs_a_vanishing_expression():
    with pytest.raises(MalformedInput):
        vanishing_stability_test(parse_expr("(schwarz (germ f 0))"), {"f": exp_jet(4)}, 2, trials=1)


def test_shift_skips_inner_value_off_base(capsys):
    # Moving g(0) breaks compose's precondition; that trial is skipped.
    text = "(poly-apply (+ y1 y2) (germ g 0) (compose (germ f 0) (germ g 0)))"
    e = parse_expr(text)
    env = random_environment(e, 0, seed=0)
    assert certified_shift_lower_bound(e, env, 0) == 0
    assert cli_main(["shift", "--expr", text, "--n", "0"]) == 0
    assert capsys.readouterr().out == "upper: 0, certified lower: 0\n"


def test_inner_value_mismatch_is_a_domain_error():
    f = generate_random_jet(1, 3, 1)
    g = Jet(1, 3, (ZERO,), {(0,): 1, (1,): 1})
    with pytest.raises(OperatorDomainError):
        compose(f, [g])
    with pytest.raises(BaseMismatch):
        compose(f, [g])


CLASS_RANK = {OperatorClass.B: 0, OperatorClass.C: 1, OperatorClass.D: 2}

CLASSIFIED = [
    EXP_QUOTIENT,
    "(compose (germ f 0) (poly (+ z 1/2) 0))",
    "(schwarz (compose (germ f 0) (gpoly (* i z) 0)))",
    "(mdiv (deram 2 (germ f [0 0])))",
    "(partial 1 (implicit (compose (germ f [0 0]) (poly (* 2 z1) [0 0]) (germ g [0 0]))))",
]

WRAPPERS = ["(schwarz {})", "(mdiv {})", "(deram 2 {})", "(partial 1 {})", "(implicit {})"]


@pytest.mark.parametrize("text", CLASSIFIED)
def test_sub_expressions_classify_no_higher(text):
    e = parse_expr(text)
    c = classify(e)
    for node in e.nodes():
        if node.is_applied_polynomial:
            continue
        sub = classify(node)
        assert CLASS_RANK[sub.op_class] <= CLASS_RANK[c.op_class]
        assert sub.empty_definable or not c.empty_definable


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CLASSIFIED), st.sampled_from(WRAPPERS))
def test_embedding_never_lowers_the_class(text, wrapper):
    inner = classify(parse_expr(text))
    outer = classify(parse_expr(wrapper.format(text)))
    assert CLASS_RANK[outer.op_class] >= CLASS_RANK[inner.op_class]
    assert outer.empty_definable == inner.empty_definable


EVALUATED = [
    "(partial 1 (germ g 0))",
    "(mdiv (germ g 0))",
    "(deram 2 (germ g 0))",
    "(implicit (germ h [0 0]))",
    "(schwarz (compose (germ f 1) (germ g 0)))",
    "(poly-apply (- y1 y2) (deram 3 (germ g 0)) (compose (germ f 1) (germ h 0)))",
]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(EVALUATED), st.integers(0, 1_000), st.integers(0, 4))
def test_evaluation_is_deterministic(text, seed, n):
    env = random_environment(parse_expr(text), n, seed)
    first = apply_expr(parse_expr(text), env, n)
    second = apply_expr(parse_expr(text), env, n)
    assert first == second
    assert io.dumps(io.jet_to_dict(first)) == io.dumps(io.jet_to_dict(second))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(EVALUATED), st.integers(0, 1_000), st.integers(0, 3))
def test_measured_shift_never_exceeds_the_structural_bound(text, seed, n):
    e = parse_expr(text)
    bound = shift_bound(e).evaluate(n)
    env = random_environment(e, n, seed)
    assert not measure_shift_lower_bound(e, env, n, bound + 1)
    assert certified_shift_lower_bound(e, env, n) <= bound


DERAMIFIED_SQUARE = "(poly-apply (- y1 y2) (deram 2 (compose (germ f 0) (gpoly (^ z 2) 0))) (germ f 0))"


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 1_000))
def test_deramified_square_is_stable(seed):
    f = generate_random_jet(1, 8, seed)
    report = vanishing_stability_test(parse_expr(DERAMIFIED_SQUARE), {"f": f}, 2, trials=4, tested_order=4, seed=seed)
    assert report.stable
    assert report.inadmissible == 0
