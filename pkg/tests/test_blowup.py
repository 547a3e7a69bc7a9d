"""Tests for blow-up charts and blow-down reconstruction."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from germ_calculus.blowup.charts import (
    Chart,
    blow_down_reconstruct,
    blow_up_jet,
    chart_transition_check,
    charts_consistent,
    divisor_constancy_check,
    nonlocality_witness,
)
from germ_calculus.errors import BaseMismatch, DimensionMismatch, InsufficientOrder, MalformedInput, NotABlowDown
from germ_calculus.harness.random_jets import generate_random_jet
from germ_calculus.models.gaussian import I, ONE, ZERO, GaussianRational
from germ_calculus.models.jet import Jet, truncate

ORIGIN = (ZERO, ZERO)


@pytest.mark.parametrize("label, expected", [("0", Chart(ZERO)), ("inf", Chart.infinity()), ("∞", Chart(None)), ("1+i", Chart(GaussianRational(1, 1))), (2, Chart(GaussianRational(2)))])
def test_chart_labels(label, expected):
    assert Chart.of(label) == expected


def test_chart_images():
    assert Chart(ONE).image((2, 3)) == (2, 8)
    assert Chart.infinity().image((2, 3)) == (6, 3)


def test_blow_up_of_monomial():
    # z1 z2 ∘ π_0 = z1² z2
    f = Jet(2, 4, ORIGIN, {(1, 1): 1})
    assert blow_up_jet(f, 0) == Jet(2, 4, ORIGIN, {(2, 1): 1})
    # z2 ∘ π_λ = λ z1 + z1 z2
    g = Jet(2, 4, ORIGIN, {(0, 1): 1})
    assert blow_up_jet(g, I) == Jet(2, 4, ORIGIN, {(1, 0): I, (1, 1): 1})


def test_blow_up_rejects():
    with pytest.raises(DimensionMismatch):
        blow_up_jet(Jet(1, 2, (0,), {}))
    with pytest.raises(BaseMismatch):
        blow_up_jet(Jet(2, 2, (ONE, ZERO), {}))
    with pytest.raises(InsufficientOrder):
        blow_up_jet(Jet(2, 2, ORIGIN, {}), 0, 3)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(["0", "1", "i", "-1/2+i", "inf"]))
def test_round_trip(seed, label):
    k = 3
    f = generate_random_jet(2, 2 * k, seed, coeff_bound=5)
    g = blow_up_jet(f, label, 2 * k)
    assert divisor_constancy_check(g, label)
    assert blow_down_reconstruct(g, k, label) == truncate(f, k)


def test_default_reconstruction_order():
    f = generate_random_jet(2, 4, 1)
    assert blow_down_reconstruct(blow_up_jet(f)).order == 2


def test_reconstruction_needs_double_order():
    with pytest.raises(InsufficientOrder):
        blow_down_reconstruct(Jet(2, 5, ORIGIN, {}), 3)


def test_not_a_blow_down():
    with pytest.raises(NotABlowDown):
        blow_down_reconstruct(Jet(2, 4, ORIGIN, {(0, 1): 1}), 2, 0)
    with pytest.raises(NotABlowDown):
        blow_down_reconstruct(Jet(2, 4, ORIGIN, {(1, 0): 1}), 2, "inf")


def test_divisor_constancy_fails_for_z2():
    assert not divisor_constancy_check(Jet(2, 2, ORIGIN, {(0, 1): 1}), 0)
    assert divisor_constancy_check(Jet(2, 2, ORIGIN, {(0, 1): 1}), "inf")


def test_chart_transitions():
    f = generate_random_jet(2, 6, 9)
    assert chart_transition_check(f, 0, "inf", 3)
    assert chart_transition_check(f, I, Fraction(1, 2), 3)
    with pytest.raises(InsufficientOrder):
        chart_transition_check(f, 0, 1, 4)


def test_inconsistent_charts():
    f1 = generate_random_jet(2, 4, 1)
    f2 = generate_random_jet(2, 4, 2)
    assert not charts_consistent(blow_up_jet(f1, 0), 0, blow_up_jet(f2, 1), 1, 2)
    assert not charts_consistent(Jet(2, 4, ORIGIN, {(0, 1): 1}), 0, blow_up_jet(f1, 1), 1, 2)


def test_nonlocality_witness():
    points = [(0, (Fraction(1, 2), ZERO)), ("inf", (ONE, Fraction(1, 2)))]
    w = nonlocality_witness(points, 2, (Fraction(1, 5), Fraction(1, 7)))
    assert w.images == [(Fraction(1, 2), 0), (Fraction(1, 2), Fraction(1, 2))]
    assert w.chart_jets_vanish
    assert w.probe_value != 0
    assert w.holds


def test_nonlocality_needs_points():
    with pytest.raises(MalformedInput):
        nonlocality_witness([], 2, (ONE, ONE))
