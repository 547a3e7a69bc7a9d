"""Tests for jets, polynomials and their arithmetic."""

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from germ_calculus.errors import BaseMismatch, DimensionMismatch, InsufficientOrder, MalformedInput
from germ_calculus.models.gaussian import I, ONE, ZERO, GaussianRational
from germ_calculus.models.jet import (
    Jet,
    coordinate,
    constant,
    derivative_values,
    equal_to_order,
    evaluate_polynomial_on_jets,
    evaluate_truncated,
    exp_jet,
    from_polynomial,
    jet_tuple,
    mul,
    pad_order,
    partial_derivative,
    power,
    truncate,
)
from germ_calculus.models.multi_index import count_up_to, indices_of_degree, indices_up_to
from germ_calculus.models.polynomial import Polynomial
from tests.strategies import jets

ORIGIN2 = (ZERO, ZERO)


def test_indices_are_graded():
    idx = indices_up_to(2, 2)
    assert idx == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))
    assert len(indices_up_to(3, 4)) == count_up_to(3, 4)
    assert list(indices_of_degree(1, 5)) == [(5,)]


def test_zero_coefficients_are_dropped():
    f = Jet(1, 3, (0,), {(0,): 1, (2,): 0})
    assert f.coeffs == {(0,): ONE}


def test_rejects_bad_shapes():
    with pytest.raises(DimensionMismatch):
        Jet(2, 2, (0,), {})
    with pytest.raises(MalformedInput):
        Jet(1, 2, (0,), {(3,): 1})
    with pytest.raises(MalformedInput):
        Jet(1, -1, (0,), {})
    with pytest.raises(DimensionMismatch):
        Jet(2, 2, ORIGIN2, {(1,): 1})


def test_valuation_and_value():
    f = Jet(2, 4, ORIGIN2, {(1, 1): 3, (0, 3): 1})
    assert f.valuation() == 2
    assert f.value == ZERO
    assert Jet(1, 3, (0,), {}).valuation() is None


def test_add_takes_smaller_order():
    f = Jet(1, 4, (0,), {(4,): 1, (1,): 2})
    g = Jet(1, 2, (0,), {(1,): 1})
    assert (f + g) == Jet(1, 2, (0,), {(1,): 3})


def test_base_mismatch():
    with pytest.raises(BaseMismatch):
        constant(1, 2, (0,), 1) + constant(1, 2, (1,), 1)


def test_square_of_one_plus_z():
    f = Jet(1, 3, (0,), {(0,): 1, (1,): 1})
    assert mul(f, f) == Jet(1, 3, (0,), {(0,): 1, (1,): 2, (2,): 1})
    assert power(f, 3) == Jet(1, 3, (0,), {(0,): 1, (1,): 3, (2,): 3, (3,): 1})


def test_exp_coefficients():
    e = exp_jet(6)
    assert all(e.coefficient((n,)) == Fraction(1, factorial(n)) for n in range(7))


def test_from_polynomial_recenters():
    z = Polynomial.variable(1, 0)
    f = from_polynomial(z * z, (ONE,), 4)
    assert f == Jet(1, 4, (1,), {(0,): 1, (1,): 2, (2,): 1})


def test_from_polynomial_truncates():
    p = Polynomial(2, {(3, 0): 1, (0, 1): I})
    f = from_polynomial(p, ORIGIN2, 2)
    assert f.coeffs == {(0, 1): I}


def test_coordinate():
    c = coordinate(2, 3, (1, I), 2)
    assert c.value == I
    assert c.coefficient((0, 1)) == ONE
    with pytest.raises(DimensionMismatch):
        coordinate(2, 3, ORIGIN2, 3)


def test_partial_derivative_drops_order():
    f = Jet(2, 3, ORIGIN2, {(2, 1): 5, (0, 3): 1})
    d = partial_derivative(f, 1)
    assert d == Jet(2, 2, ORIGIN2, {(1, 1): 10})
    with pytest.raises(InsufficientOrder):
        partial_derivative(constant(1, 0, (0,), 1), 1)


def test_truncate_and_pad():
    f = Jet(1, 3, (0,), {(3,): 1, (1,): 1})
    assert truncate(f, 2).coeffs == {(1,): ONE}
    assert pad_order(f, 5).order == 5
    with pytest.raises(InsufficientOrder):
        truncate(f, 4)


def test_derivative_values_use_factorials():
    f = Jet(2, 3, ORIGIN2, {(2, 1): 1})
    assert derivative_values(f)[(2, 1)] == 2
    assert derivative_values(f)[(0, 0)] == 0


def test_jet_tuple_rejects_duplicate_points():
    f = constant(1, 2, (0,), 1)
    with pytest.raises(BaseMismatch):
        jet_tuple([f, f], 1)
    t = jet_tuple([f, constant(1, 3, (1,), 2)], 2)
    assert t.order == 2
    assert t.entry_count() == 6


def test_equal_to_order():
    f = Jet(1, 3, (0,), {(3,): 1})
    g = Jet(1, 3, (0,), {})
    assert equal_to_order(f, g, 2)
    assert not equal_to_order(f, g, 3)


def test_evaluate_truncated():
    f = Jet(2, 2, (ONE, ZERO), {(0, 0): 1, (1, 0): 2, (0, 1): I, (1, 1): 3})
    # offset (1, i): 1 + 2 + i·i + 3i
    assert evaluate_truncated(f, (2, I)) == GaussianRational(2, 3)
    with pytest.raises(DimensionMismatch):
        evaluate_truncated(f, (2,))


def test_evaluate_polynomial_on_jets():
    z = coordinate(1, 4, (0,), 1)
    one_plus = z + constant(1, 4, (0,), 1)
    p = Polynomial(2, {(1, 1): 1, (0, 0): -1})  # y1*y2 - 1
    out = evaluate_polynomial_on_jets(p, [one_plus, one_plus])
    assert out == Jet(1, 4, (0,), {(1,): 2, (2,): 1})


def test_polynomial_translate_and_substitute():
    x = Polynomial.variable(1, 0)
    p = (x - 1) ** 2
    assert p.translate([ONE]) == x * x
    assert p.substitute([x + 1]) == x * x


@settings(max_examples=40, deadline=None)
@given(jets(), jets(), jets())
def test_ring_laws(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@settings(max_examples=40, deadline=None)
@given(jets(order=4), jets(order=4))
def test_leibniz_rule(f, g):
    lhs = partial_derivative(f * g, 2)
    rhs = partial_derivative(f, 2) * truncate(g, 3) + truncate(f, 3) * partial_derivative(g, 2)
    assert lhs == rhs


@settings(max_examples=25, deadline=None)
@given(jets(dim=1, order=5))
def test_one_is_neutral(f):
    assert f * constant(1, 5, (0,), 1) == f


def _with_tail(f, tail, k):
    coeffs = {a: c for a, c in f.coeffs.items() if sum(a) <= k}
    coeffs.update({a: c for a, c in tail.coeffs.items() if sum(a) > k})
    return Jet(f.dim, f.order, f.base, coeffs)


@settings(max_examples=40, deadline=None)
@given(jets(order=4), jets(order=4), jets(order=4), st.integers(0, 4))
def test_equal_to_order_is_an_equivalence(f, t1, t2, k):
    g, h = _with_tail(f, t1, k), _with_tail(f, t2, k)
    assert equal_to_order(f, f, k)
    assert equal_to_order(f, g, k) and equal_to_order(g, f, k)
    assert equal_to_order(g, h, k) and equal_to_order(f, h, k)
