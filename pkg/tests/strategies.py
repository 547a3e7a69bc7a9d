"""Hypothesis strategies for scalars and jets"""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from germ_calculus.harness.random_jets import generate_random_jet
from germ_calculus.models.gaussian import GaussianRational


def fractions(bound: int = 20) -> st.SearchStrategy[Fraction]:
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, bound))


def gaussians(bound: int = 20) -> st.SearchStrategy[GaussianRational]:
    return st.builds(GaussianRational, fractions(bound), fractions(bound))


def nonzero_gaussians(bound: int = 20) -> st.SearchStrategy[GaussianRational]:
    return gaussians(bound).filter(bool)


def jets(dim: int = 2, order: int = 3, base=None) -> st.SearchStrategy:
    """Random jets of a fixed shape, one per seed"""
    return st.integers(0, 10_000).map(
        lambda seed: generate_random_jet(dim, order, seed, coeff_bound=5, base=base, density=0.6)
    )
