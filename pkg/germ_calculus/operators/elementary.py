"""The elementary operators acting on jets.

Every operator returns the largest output order it can certify from the
orders of its inputs:

    schwarz, compose, implicit_fn   order n  ->  order n
    partial_derivative, monomial_div order n  ->  order n - 1
    deramify(m)                      order n  ->  order n // m
"""

from __future__ import annotations

import logging
from typing import Optional, Sequence

from germ_calculus.errors import (
    BaseMismatch,
    DimensionMismatch,
    DivisionNotDefined,
    ImplicitFunctionUndefined,
    InnerValueMismatch,
    InsufficientOrder,
    MalformedInput,
    NotDeramifiable,
)
from germ_calculus.models.gaussian import Scalar
from germ_calculus.models.jet import (
    Coeffs,
    Jet,
    as_polynomial,
    coordinate,
    evaluate_polynomial_on_jets,
    from_polynomial,
    partial_derivative,
)
from germ_calculus.models.multi_index import degree, zero_index
from germ_calculus.models.polynomial import Polynomial

logger = logging.getLogger(__name__)


def embed_polynomial(poly: Polynomial, base: Sequence[Scalar], order: int) -> Jet:
    """The germ P_a of a polynomial at `base`"""
    return from_polynomial(poly, base, order)


def schwarz(f: Jet) -> Jet:
    """z ↦ conj(f(conj z)): conjugate base and coefficients"""
    return Jet(
        f.dim,
        f.order,
        tuple(a.conjugate() for a in f.base),
        {alpha: c.conjugate() for alpha, c in f.coeffs.items()},
    )


def compose(f: Jet, g: Sequence[Jet]) -> Jet:
    """f ∘ (g_1, …, g_n) at the common base of the g_i.

    Args:
        f: Outer jet of dimension n at base a
        g: n inner jets of one dimension m at a common base b with g(b) = a

    Returns:
        Jet of dimension m at b, of order min of all input orders
    """
    if len(g) != f.dim:
        raise DimensionMismatch(f"outer jet has dimension {f.dim}, got {len(g)} inner jets", "compose")
    inner = g[0]
    for gi in g[1:]:
        if gi.dim != inner.dim:
            raise DimensionMismatch(f"inner jets of dimensions {inner.dim} and {gi.dim}", "compose")
        if gi.base != inner.base:
            raise BaseMismatch("inner jets are not based at one point", "compose")
    for i, (gi, a) in enumerate(zip(g, f.base)):
        if gi.value != a:
            raise InnerValueMismatch(
                f"inner jet {i + 1} takes value {gi.value} at the base, outer jet is based at {a}",
                "compose",
            )
    order = min([f.order] + [gi.order for gi in g])
    # Centered inner jets g_i − a_i vanish at b.
    centered = [
        Jet(gi.dim, order, gi.base, {a: c for a, c in gi.coeffs.items() if any(a) and degree(a) <= order})
        for gi in g
    ]
    return evaluate_polynomial_on_jets(as_polynomial(f).truncate(order), centered, order)


def apply_polynomial(poly: Polynomial, g: Sequence[Jet]) -> Jet:
    """P(g_1, …, g_n) for an everywhere-defined polynomial P"""
    if len(g) != poly.nvars:
        raise DimensionMismatch(f"polynomial in {poly.nvars} variables, got {len(g)} jets", "apply_polynomial")
    return evaluate_polynomial_on_jets(poly, g)


def implicit_fn(f: Jet, k_out: Optional[int] = None) -> Jet:
    """φ with f(z′, φ(z′)) ≡ 0 and φ(a′) = a_n, solved one degree at a time.

    Requires f(a) = 0 and ∂f/∂z_n(a) ≠ 0. The result has order `k_out`
    (default: the order of f), which may not exceed the order of f.
    """
    n = f.dim
    if n < 2:
        raise DimensionMismatch("implicit function needs at least two variables", "implicit_fn")
    if k_out is None:
        k_out = f.order
    if k_out > f.order:
        raise InsufficientOrder(
            f"output order {k_out} needs an input of order {k_out}, got {f.order}", "implicit_fn", required=k_out
        )
    if f.value:
        raise ImplicitFunctionUndefined(f"f(a) = {f.value} is not zero", "implicit_fn")
    pivot = f.coefficient(tuple(1 if i == n - 1 else 0 for i in range(n)))
    if not pivot:
        raise ImplicitFunctionUndefined("∂f/∂z_n(a) vanishes", "implicit_fn")

    base = f.base[:-1]
    coeffs: Coeffs = {zero_index(n - 1): f.base[-1]}
    for d in range(1, k_out + 1):
        trial = Jet(n - 1, d, base, coeffs)
        inner = [coordinate(n - 1, d, base, i) for i in range(1, n)] + [trial]
        residual = compose(f, inner)
        for alpha, c in residual.homogeneous_part(d).items():
            coeffs[alpha] = -c / pivot
        logger.debug("implicit_fn: solved degree %d", d)
    return Jet(n - 1, k_out, base, coeffs)


def monomial_div(f: Jet) -> Jet:
    """f(z)/(z_n − a_n), defined when f vanishes identically on z_n = a_n"""
    if f.order == 0:
        raise InsufficientOrder("monomial division needs order at least 1", "monomial_div", required=1)
    out: Coeffs = {}
    for alpha, c in f.coeffs.items():
        if alpha[-1] == 0:
            raise DivisionNotDefined(
                f"f(z′, a_n) is not identically zero (coefficient {c} at {alpha})", "monomial_div"
            )
        out[alpha[:-1] + (alpha[-1] - 1,)] = c
    return Jet(f.dim, f.order - 1, f.base, out)


def multiply_by_last_coordinate(f: Jet) -> Jet:
    """(z_n − a_n)·f, certified one order higher than f"""
    out = {alpha[:-1] + (alpha[-1] + 1,): c for alpha, c in f.coeffs.items()}
    return Jet(f.dim, f.order + 1, f.base, out)


def deramify(f: Jet, m: int) -> Jet:
    """f(z′, a_n + (z_n − a_n)^{1/m}) for f invariant under z_n − a_n ↦ ω(z_n − a_n)"""
    if m < 1:
        raise MalformedInput(f"ramification index must be positive, got {m}", "deramify")
    out_order = f.order // m
    out: Coeffs = {}
    for alpha, c in f.coeffs.items():
        if alpha[-1] % m:
            raise NotDeramifiable(
                f"coefficient {c} at {alpha} breaks the order-{m} rotational symmetry", "deramify"
            )
        key = alpha[:-1] + (alpha[-1] // m,)
        if degree(key) <= out_order:
            out[key] = c
    return Jet(f.dim, out_order, f.base, out)


def ramify(f: Jet, m: int) -> Jet:
    """f(z′, a_n + (z_n − a_n)^m), the substitution undone by deramify.

    In one variable the order grows to m·order; with more variables the
    mixed terms of the input still cap the certified order at the input order.
    """
    if m < 1:
        raise MalformedInput(f"ramification index must be positive, got {m}", "ramify")
    target = f.order * m if f.dim == 1 else f.order
    out: Coeffs = {}
    for alpha, c in f.coeffs.items():
        key = alpha[:-1] + (alpha[-1] * m,)
        if degree(key) <= target:
            out[key] = c
    return Jet(f.dim, target, f.base, out)
