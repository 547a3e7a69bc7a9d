"""Seeded random jets and operator inputs.

Random jets are heuristic stand-ins for generic germs: nothing here
certifies that a jet avoids algebraic relations.
"""

from __future__ import annotations

import logging
import random
from typing import Dict, List, Optional, Sequence

from germ_calculus.calculus.expr import LeafKey, NodeKind, OperatorExpr
from germ_calculus.calculus.shift import shift_bound
from germ_calculus.errors import MalformedInput
from germ_calculus.models.gaussian import ZERO, GaussianRational, Scalar
from germ_calculus.models.jet import Coeffs, Jet, make_point
from germ_calculus.models.multi_index import MultiIndex, indices_up_to, unit, zero_index

logger = logging.getLogger(__name__)


def generate_random_jet(
    dim: int,
    order: int,
    seed: int,
    coeff_bound: int = 9,
    base: Optional[Sequence[Scalar]] = None,
    density: Optional[float] = None,
) -> Jet:
    """Deterministic random jet of the given shape.

    Args:
        dim: Number of variables
        order: Truncation order
        seed: Seed of a private `random.Random`
        coeff_bound: Bound on numerators and denominators (≥ 1)
        base: Base point (default: origin)
        density: Probability that a slot is filled (default: every slot)

    Returns:
        Jet whose filled slots have nonzero real part
    """
    if coeff_bound < 1:
        raise MalformedInput(f"coefficient bound must be at least 1, got {coeff_bound}", "generate_random_jet")
    rng = random.Random(seed)
    coeffs: Coeffs = {}
    for alpha in indices_up_to(dim, order):
        if density is not None and rng.random() >= density:
            continue
        coeffs[alpha] = GaussianRational.random(rng, coeff_bound, nonzero=True)
    point = make_point(base) if base is not None else (ZERO,) * dim
    return Jet(dim, order, point, coeffs)


def random_point(rng: random.Random, dim: int, coeff_bound: int = 3) -> tuple:
    return tuple(GaussianRational.random(rng, coeff_bound) for _ in range(dim))


def random_even_jet(order: int, seed: int, coeff_bound: int = 9) -> Jet:
    """One-variable jet h(z²) at 0: only even degrees are filled"""
    f = generate_random_jet(1, order, seed, coeff_bound)
    return Jet(1, order, f.base, {a: c for a, c in f.coeffs.items() if a[0] % 2 == 0})


def random_implicit_input(dim: int, order: int, seed: int, coeff_bound: int = 9, base=None) -> Jet:
    """Random f with f(a) = 0 and ∂f/∂z_n(a) ≠ 0"""
    f = generate_random_jet(dim, order, seed, coeff_bound, base)
    coeffs = dict(f.coeffs)
    coeffs.pop(zero_index(dim), None)
    if order >= 1:
        coeffs.setdefault(unit(dim, dim - 1), GaussianRational.random(random.Random(seed + 1), coeff_bound, True))
    return Jet(dim, order, f.base, coeffs)


def _repair(jet: Jet, parents: List[tuple], seed: int, coeff_bound: int) -> Jet:
    """Move a random jet into the domain of the operators directly above it"""
    coeffs: Dict[MultiIndex, GaussianRational] = dict(jet.coeffs)
    n = jet.dim
    for parent, position in parents:
        kind = parent.kind
        if kind is NodeKind.DERAM:
            m = parent.ramification
            coeffs = {a: c for a, c in coeffs.items() if a[-1] % m == 0}
        elif kind is NodeKind.MDIV:
            coeffs = {a: c for a, c in coeffs.items() if a[-1] >= 1}
        elif kind is NodeKind.IMPLICIT:
            coeffs.pop(zero_index(n), None)
            if jet.order >= 1 and not coeffs.get(unit(n, n - 1)):
                coeffs[unit(n, n - 1)] = GaussianRational.random(random.Random(seed), coeff_bound, True)
        elif kind is NodeKind.COMPOSE and position > 0:
            outer = parent.children[0]
            if outer.base is not None:
                coeffs[zero_index(n)] = outer.base[position - 1]
    return Jet(n, jet.order, jet.base, coeffs)


def random_environment(
    e: OperatorExpr, n: int, seed: int = 0, coeff_bound: int = 9
) -> Dict[str, List[Jet]]:
    """Random input jets for every leaf of `e`, long enough for output order n.

    Each jet is adjusted for the operator directly above its leaf: symmetry
    in the last variable under deram, vanishing on the hyperplane under mdiv,
    a regular zero under implicit, and the outer base point as value when it
    is an inner argument of compose.
    """
    required = shift_bound(e).required_orders(n)
    parents: Dict[LeafKey, List[tuple]] = {}
    for node in e.nodes():
        for position, child in enumerate(node.children):
            if child.kind is NodeKind.GERM:
                parents.setdefault((child.name, child.base), []).append((node, position))
    env: Dict[str, List[Jet]] = {}
    for i, ((name, base), leaf) in enumerate(sorted(e.leaves().items(), key=lambda kv: kv[1].to_text())):
        order = required.get((name, base), n)
        jet = generate_random_jet(len(base), order, seed + i, coeff_bound, base)
        jet = _repair(jet, parents.get((name, base), []), seed + i, coeff_bound)
        env.setdefault(name, []).append(jet)
    logger.debug("random environment for %s: %d leaves", e, len(e.leaves()))
    return env
