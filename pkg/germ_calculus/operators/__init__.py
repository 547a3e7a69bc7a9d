"""Elementary operators on jets"""

from .elementary import (
    embed_polynomial,
    schwarz,
    compose,
    apply_polynomial,
    implicit_fn,
    monomial_div,
    multiply_by_last_coordinate,
    deramify,
    ramify,
    partial_derivative,
)

__all__ = [
    "embed_polynomial",
    "schwarz",
    "compose",
    "apply_polynomial",
    "implicit_fn",
    "monomial_div",
    "multiply_by_last_coordinate",
    "deramify",
    "ramify",
    "partial_derivative",
]
