"""Implicit systems over C[x, e^x] and their closure constructions"""

from .systems import (
    ExpPolynomial,
    ImplicitSystem,
    ImplicitSolution,
    SolutionCheck,
    eval_residual,
    jacobian,
    check_solution,
)
from .closures import (
    LinearRelation,
    closure_schwarz,
    closure_compose,
    closure_derivative,
    closure_implicit,
    reduce_linear_relation,
)
from .linalg import rank, is_invertible, select_rows

__all__ = [
    "ExpPolynomial",
    "ImplicitSystem",
    "ImplicitSolution",
    "SolutionCheck",
    "eval_residual",
    "jacobian",
    "check_solution",
    "LinearRelation",
    "closure_schwarz",
    "closure_compose",
    "closure_derivative",
    "closure_implicit",
    "reduce_linear_relation",
    "rank",
    "is_invertible",
    "select_rows",
]
