"""Independent reference computations used to cross-check the jet kernels"""

from __future__ import annotations

from typing import Dict, Sequence

from germ_calculus.errors import DimensionMismatch
from germ_calculus.models.jet import Jet, as_polynomial
from germ_calculus.models.polynomial import Polynomial


def substitution_oracle(f: Jet, g: Sequence[Jet]) -> Jet:
    """f ∘ g by Horner-style substitution of truncated polynomials.

    The outer polynomial is expanded one variable at a time and every
    partial result is truncated before the next multiplication. No jet
    product is involved.
    """
    if len(g) != f.dim:
        raise DimensionMismatch(f"outer dimension {f.dim}, {len(g)} inner jets", "substitution_oracle")
    order = min([f.order] + [gi.order for gi in g])
    inner = g[0]
    centered = [as_polynomial(gi).truncate(order) - gi.value for gi in g]
    outer = as_polynomial(f).truncate(order)
    result = _horner(outer, centered, inner.dim, order)
    return Jet(inner.dim, order, inner.base, result.terms)


def _horner(p: Polynomial, images: Sequence[Polynomial], target: int, order: int) -> Polynomial:
    """p(images) in `target` variables, truncated at `order`"""
    if p.nvars == 0:
        return Polynomial.constant(target, p.coefficient(()))
    if not p.terms:
        return Polynomial(target)
    slices: Dict[int, Polynomial] = {}
    for alpha, c in p.terms.items():
        rest = Polynomial(p.nvars - 1, {alpha[1:]: c})
        slices[alpha[0]] = slices.get(alpha[0], Polynomial(p.nvars - 1)) + rest
    acc = Polynomial(target)
    for e in range(max(slices), -1, -1):
        acc = (acc * images[0]).truncate(order)
        if e in slices:
            acc = acc + _horner(slices[e], images[1:], target, order)
    return acc
