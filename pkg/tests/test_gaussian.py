"""Tests for Gaussian rational arithmetic."""

from fractions import Fraction
import random

import pytest
from hypothesis import given

from germ_calculus.errors import MalformedInput
from germ_calculus.models.gaussian import I, ONE, ZERO, GaussianRational
from tests.strategies import gaussians, nonzero_gaussians


def q(re, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


def test_i_squared():
    assert I * I == -ONE


def test_lowest_terms():
    assert GaussianRational(Fraction(2, 4), Fraction(-3, 6)) == q(Fraction(1, 2), Fraction(-1, 2))


def test_eq_int_and_fraction():
    assert q(3) == 3
    assert q(Fraction(1, 2)) == Fraction(1, 2)
    assert q(1, 1) != 1


def test_hash_matches_real_fraction():
    assert hash(q(Fraction(1, 3))) == hash(Fraction(1, 3))


def test_div():
    a, b = q(1, 2), q(3, -1)
    assert (a / b) * b == a


def test_inverse_of_i():
    assert I.inverse() == -I


def test_inverse_zero():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_pow_negative():
    assert (q(0, 2) ** -2) == q(Fraction(-1, 4))


def test_conjugate_and_norm():
    a = q(3, 4)
    assert a.conjugate() == q(3, -4)
    assert a.norm() == 25
    assert a * a.conjugate() == 25


@pytest.mark.parametrize(
    "text, expected",
    [
        ("3", q(3)),
        ("-1/2", q(Fraction(-1, 2))),
        ("i", I),
        ("-i", -I),
        ("-2i", q(0, -2)),
        ("1/2+1/3i", q(Fraction(1, 2), Fraction(1, 3))),
        ("1 - i", q(1, -1)),
        ("2*i", q(0, 2)),
    ],
)
def test_parse(text, expected):
    assert GaussianRational.parse(text) == expected


@pytest.mark.parametrize("text", ["", "abc", "1/0", "1+", "ii"])
def test_parse_rejects(text):
    with pytest.raises(MalformedInput):
        GaussianRational.parse(text)


@pytest.mark.parametrize("value", [q(0), q(5), q(Fraction(-7, 3)), I, -I, q(1, -1), q(Fraction(1, 2), Fraction(2, 3))])
def test_str_parses_back(value):
    assert GaussianRational.parse(str(value)) == value


def test_random_nonzero_is_reproducible():
    a = [GaussianRational.random(random.Random(7), 5, nonzero=True) for _ in range(3)]
    b = [GaussianRational.random(random.Random(7), 5, nonzero=True) for _ in range(3)]
    assert a == b
    assert all(a)


@given(gaussians(), gaussians(), gaussians())
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(gaussians(), gaussians())
def test_mul_commutes(a, b):
    assert a * b == b * a


@given(nonzero_gaussians())
def test_inverse_law(a):
    assert a * a.inverse() == ONE


@given(gaussians(), nonzero_gaussians())
def test_division_undoes_multiplication(a, b):
    assert (a * b) / b == a
