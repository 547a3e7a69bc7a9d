"""Operator expressions, classes, shift bounds and their evaluation on jets"""

from .expr import (
    NodeKind,
    OperatorClass,
    OperatorExpr,
    Classification,
    classify,
    germ,
    poly,
    gpoly,
    poly_apply,
    schwarz_of,
    compose_of,
    partial_of,
    implicit_of,
    mdiv_of,
    deram_of,
)
from .parser import parse_expr, parse_polynomial
from .shift import ShiftBound, shift_bound
from .interpreter import (
    StabilityReport,
    apply_expr,
    resolve_leaves,
    measure_shift_lower_bound,
    certified_shift_lower_bound,
    vanishing_stability_test,
)

__all__ = [
    "NodeKind",
    "OperatorClass",
    "OperatorExpr",
    "Classification",
    "classify",
    "germ",
    "poly",
    "gpoly",
    "poly_apply",
    "schwarz_of",
    "compose_of",
    "partial_of",
    "implicit_of",
    "mdiv_of",
    "deram_of",
    "parse_expr",
    "parse_polynomial",
    "ShiftBound",
    "shift_bound",
    "StabilityReport",
    "apply_expr",
    "resolve_leaves",
    "measure_shift_lower_bound",
    "certified_shift_lower_bound",
    "vanishing_stability_test",
]
