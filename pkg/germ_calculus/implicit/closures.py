"""Closure constructions on implicitly defined germs.

Each construction maps a passing (system, solution) pair to a new pair
whose first unknown is the germ being defined, and checks both pairs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from germ_calculus.errors import (
    BaseMismatch,
    DimensionMismatch,
    ImplicitFunctionUndefined,
    NoInvertibleSelection,
    RelationError,
)
from germ_calculus.implicit.linalg import select_rows
from germ_calculus.implicit.systems import (
    ExpPolynomial,
    ImplicitSolution,
    ImplicitSystem,
    gradients,
    require_solution,
)
from germ_calculus.models.gaussian import ONE, ZERO, GaussianRational
from germ_calculus.models.jet import Jet, coordinate, from_polynomial, partial_derivative, scale, truncate
from germ_calculus.models.multi_index import MultiIndex
from germ_calculus.models.polynomial import Polynomial
from germ_calculus.operators.elementary import compose, implicit_fn, schwarz

logger = logging.getLogger(__name__)

Pair = Tuple[ImplicitSystem, ImplicitSolution]


def _checked(system: ImplicitSystem, solution: ImplicitSolution, operator: str) -> Pair:
    require_solution(system, solution, operator, role="output")
    return system, solution


def closure_schwarz(F: ImplicitSystem, psi: ImplicitSolution) -> Pair:
    """Conjugate system solved by the reflected germs at the conjugate base"""
    require_solution(F, psi, "closure_schwarz")
    system = ImplicitSystem(tuple(p.conjugate() for p in F.components), F.coords)
    return _checked(system, ImplicitSolution(tuple(schwarz(j) for j in psi.jets), psi.coords), "closure_schwarz")


def closure_compose(
    G: ImplicitSystem,
    psi_g: ImplicitSolution,
    F: ImplicitSystem,
    psi_f: ImplicitSolution,
) -> Pair:
    """System defining h = f ∘ g.

    Args:
        G: System over coordinates x (s of them) whose first k unknowns z
            are the components of g, followed by m auxiliary unknowns u
        psi_g: Solution of G at base b
        F: System over the k coordinates z with unknowns t, f = t_1
        psi_f: Solution of F at base a = g(b)

    Returns:
        Pair of size k + m + n over x, unknowns ordered (t_1, z, u, t_2, …)
    """
    require_solution(G, psi_g, "closure_compose")
    require_solution(F, psi_f, "closure_compose")
    s, k, n = G.coords, F.coords, F.size
    m = G.size - k
    if m < 0:
        raise DimensionMismatch(f"G has {G.size} unknowns, f needs {k} arguments", "closure_compose")
    g = psi_g.jets[s:s + k]
    for i, (gi, ai) in enumerate(zip(g, psi_f.base)):
        if gi.value != ai:
            raise BaseMismatch(f"g_{i + 1}(b) = {gi.value} but f is based at {ai}", "closure_compose")

    total = s + k + m + n
    # Slot of each variable of H = (G(x, z, u), F(z, t)).
    t_slots = [s] + list(range(s + 1 + k + m, total))
    z_slots = list(range(s + 1, s + 1 + k))
    u_slots = list(range(s + 1 + k, s + 1 + k + m))
    g_positions = list(range(s)) + z_slots + u_slots
    f_positions = z_slots + t_slots
    components = [p.reindex(total, g_positions) for p in G.components]
    components += [p.reindex(total, f_positions) for p in F.components]

    order = min(psi_g.order, psi_f.order)
    g_jets = [truncate(j, order) for j in g]
    t_jets = [compose(truncate(j, order), g_jets) for j in psi_f.jets[k:]]
    jets: List[Jet] = [None] * total  # type: ignore[list-item]
    for i in range(s):
        jets[i] = truncate(psi_g.jets[i], order)
    for slot, jet in zip(z_slots, g_jets):
        jets[slot] = jet
    for slot, jet in zip(u_slots, psi_g.jets[s + k:]):
        jets[slot] = truncate(jet, order)
    for slot, jet in zip(t_slots, t_jets):
        jets[slot] = jet
    logger.debug("closure_compose: sizes k+m=%d, n=%d", k + m, n)
    return _checked(ImplicitSystem(tuple(components), s), ImplicitSolution(tuple(jets), s), "closure_compose")


def closure_derivative(F: ImplicitSystem, psi: ImplicitSolution, axis: int = 1) -> Pair:
    """System of size 2n defining ∂f/∂z_axis (1-based axis).

    F̃ = D_{z_i}F + Σ_j D_{t_j}F · w_j with total derivatives D; unknowns are
    ordered (w_1, t_1, …, t_n, w_2, …, w_n).
    """
    require_solution(F, psi, "closure_derivative")
    k, n = F.coords, F.size
    if not 1 <= axis <= k:
        raise DimensionMismatch(f"axis {axis} outside 1..{k}", "closure_derivative")
    total = k + 2 * n
    t_slots = list(range(k + 1, k + 1 + n))
    w_slots = [k] + list(range(k + 1 + n, total))
    positions = list(range(k)) + t_slots
    w = [ExpPolynomial.x(total, slot) for slot in w_slots]

    components = [p.reindex(total, positions) for p in F.components]
    for p in F.components:
        tilde = p.total_derivative(axis - 1).reindex(total, positions)
        for j in range(n):
            tilde = tilde + p.total_derivative(k + j).reindex(total, positions) * w[j]
        components.append(tilde)

    order = psi.order - 1
    jets: List[Jet] = [None] * total  # type: ignore[list-item]
    for i in range(k):
        jets[i] = truncate(psi.jets[i], order)
    for j in range(n):
        t = psi.jets[k + j]
        jets[t_slots[j]] = truncate(t, order)
        jets[w_slots[j]] = partial_derivative(t, axis)
    return _checked(ImplicitSystem(tuple(components), k), ImplicitSolution(tuple(jets), k), "closure_derivative")


def closure_implicit(F: ImplicitSystem, psi: ImplicitSolution) -> Pair:
    """System defining the implicit function φ of f = ψ_{t_1} in the last coordinate.

    The last coordinate z_k becomes the first unknown: F* = (F, t_1) over
    k − 1 coordinates, solved by (z′, φ, t_1(z′, φ), …).
    """
    require_solution(F, psi, "closure_implicit")
    k = F.coords
    if k < 2:
        raise ImplicitFunctionUndefined("closure_implicit needs at least two coordinates", "closure_implicit")
    f = psi.defined
    phi = implicit_fn(f, psi.order)
    base = phi.base
    inner = [coordinate(k - 1, phi.order, base, i) for i in range(1, k)] + [phi]
    unknowns = [compose(j, inner) for j in psi.jets[k:]]
    extra = ExpPolynomial.x(F.nvars, k)
    system = ImplicitSystem(F.components + (extra,), k - 1)
    solution = ImplicitSolution.with_coordinates([phi] + unknowns, k - 1)
    return _checked(system, solution, "closure_implicit")


@dataclass(frozen=True, slots=True)
class LinearRelation:
    """d·ψ_n = Σ_{i<n} a_i ψ_i + K with integers d ≥ 1 and a_i"""
    d: int
    coefficients: Tuple[int, ...]
    offset: GaussianRational = ZERO

    def holds_on(self, jets: Sequence[Jet]) -> bool:
        lhs = scale(jets[-1], self.d)
        rhs = [scale(j, a) for j, a in zip(jets[:-1], self.coefficients)]
        acc = lhs
        for r in rhs:
            acc = acc - r
        acc = acc - from_polynomial(Polynomial.constant(acc.dim, self.offset), acc.base, acc.order)
        return acc.is_zero()


def _substitute_component(p: ExpPolynomial, rel: LinearRelation, n: int) -> Dict[MultiIndex, Polynomial]:
    """Rewrite one component in the reduced variables.

    Returns {ỹ-exponents: polynomial in x̃} where exponents may be negative.
    """
    old = n + 1
    images = [Polynomial.variable(n, i) * rel.d for i in range(n)]
    last = Polynomial.constant(n, rel.offset / rel.d)
    for i, a in enumerate(rel.coefficients):
        last = last + Polynomial.variable(n, i) * a
    images.append(last)
    out: Dict[MultiIndex, Polynomial] = {}
    for alpha, c in p.poly.terms.items():
        x_exp, y_exp = alpha[:old], alpha[old:]
        gamma = tuple(rel.d * y_exp[i] + rel.coefficients[i] * y_exp[n] for i in range(n))
        x_part = Polynomial.monomial(x_exp, c).substitute(images)
        out[gamma] = out.get(gamma, Polynomial(n)) + x_part
    return out


def reduce_linear_relation(F: ImplicitSystem, psi: ImplicitSolution, relation: LinearRelation) -> Pair:
    """Eliminate ψ_n using an integer linear relation among the solution germs.

    x_i ↦ d·x̃_i (i < n), x_n ↦ Σ a_i x̃_i + K/d, y_i ↦ ỹ_i^d, y_n ↦ Π ỹ_i^{a_i};
    negative ỹ exponents are cleared by one monomial factor per component.
    The reduced solution is ψ̂_i(z) = ψ_i(dz)/d at base a/d, and n − 1 rows
    with invertible Jacobian are kept.
    """
    if F.coords != 1:
        raise RelationError("linear-relation reduction needs a single coordinate", "reduce_linear_relation")
    n = F.size
    if n < 2:
        raise RelationError("reduction needs a system of size at least 2", "reduce_linear_relation")
    if relation.d < 1:
        raise RelationError(f"relation must involve ψ_{n} with d >= 1, got d = {relation.d}", "reduce_linear_relation")
    if len(relation.coefficients) != n:
        raise RelationError(
            f"relation needs {n} coefficients a_0..a_{n - 1}, got {len(relation.coefficients)}",
            "reduce_linear_relation",
        )
    require_solution(F, psi, "reduce_linear_relation")
    if not relation.holds_on(psi.jets):
        raise RelationError("relation does not hold on the solution jets", "reduce_linear_relation")
    if relation.offset and F.uses_exp(n):
        raise RelationError("e^{K/d} is not polynomial: nonzero K needs y_n unused", "reduce_linear_relation")

    candidates: List[ExpPolynomial] = []
    for p in F.components:
        parts = _substitute_component(p, relation, n)
        shift = [max([0] + [-g[i] for g in parts]) for i in range(n)]
        terms: Dict[MultiIndex, GaussianRational] = {}
        for gamma, x_poly in parts.items():
            y_exp = tuple(g + s for g, s in zip(gamma, shift))
            for x_exp, c in x_poly.terms.items():
                key = x_exp + y_exp
                terms[key] = terms.get(key, ZERO) + c
        candidates.append(ExpPolynomial(n, Polynomial(2 * n, terms)))

    d = relation.d
    base = tuple(a / d for a in psi.base)
    stretch = from_polynomial(Polynomial.variable(1, 0) * d, base, psi.order)
    jets = [scale(compose(j, [stretch]), ONE / d) for j in psi.jets[:n]]
    solution = ImplicitSolution(tuple(jets), 1)

    matrix = gradients(candidates, solution, "reduce_linear_relation")
    rows = select_rows(matrix, n - 1)
    if rows is None:
        raise NoInvertibleSelection(
            f"reduced Jacobian has rank below {n - 1}; no invertible row selection", "reduce_linear_relation"
        )
    logger.debug("reduce_linear_relation: kept rows %s of %d", rows, len(candidates))
    return _checked(ImplicitSystem(tuple(candidates[i] for i in rows), 1), solution, "reduce_linear_relation")

