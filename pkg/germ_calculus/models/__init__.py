"""Core value types: Gaussian rationals, polynomials, jets, harness profiles"""

from .gaussian import GaussianRational, ZERO, ONE, I
from .multi_index import MultiIndex, degree, multi_factorial
from .polynomial import Polynomial
from .jet import (
    Jet,
    JetTuple,
    Point,
    make_point,
    constant,
    coordinate,
    exp_jet,
    from_polynomial,
    as_polynomial,
    add,
    sub,
    neg,
    scale,
    mul,
    power,
    partial_derivative,
    truncate,
    pad_order,
    equal_to_order,
    evaluate_truncated,
    derivative_values,
    jet_tuple,
    evaluate_polynomial_on_jets,
)
from .profile import HarnessProfile, PROFILE_PRESETS, default_order, load_profile

__all__ = [
    "GaussianRational",
    "ZERO",
    "ONE",
    "I",
    "MultiIndex",
    "degree",
    "multi_factorial",
    "Polynomial",
    "Jet",
    "JetTuple",
    "Point",
    "make_point",
    "constant",
    "coordinate",
    "exp_jet",
    "from_polynomial",
    "as_polynomial",
    "add",
    "sub",
    "neg",
    "scale",
    "mul",
    "power",
    "partial_derivative",
    "truncate",
    "pad_order",
    "equal_to_order",
    "evaluate_truncated",
    "derivative_values",
    "jet_tuple",
    "evaluate_polynomial_on_jets",
    "HarnessProfile",
    "PROFILE_PRESETS",
    "default_order",
    "load_profile",
]
