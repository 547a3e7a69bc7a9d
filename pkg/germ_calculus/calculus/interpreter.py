"""Evaluation of operator expressions on jets, and empirical shift probes"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Callable, Dict, Mapping, Optional, Sequence, Union

from germ_calculus.calculus.expr import LeafKey, NodeKind, OperatorExpr, base_text
from germ_calculus.calculus.shift import shift_bound
from germ_calculus.errors import (
    BaseMismatch,
    InsufficientOrder,
    MalformedInput,
    OperatorDomainError,
    UnboundGerm,
)
from germ_calculus.models.gaussian import ONE, ZERO, GaussianRational
from germ_calculus.models.jet import Jet, from_polynomial, pad_order, partial_derivative, truncate
from germ_calculus.models.multi_index import MultiIndex, degree, indices_of_degree, indices_up_to
from germ_calculus.operators.elementary import (
    apply_polynomial,
    compose,
    deramify,
    implicit_fn,
    monomial_div,
    schwarz,
)

logger = logging.getLogger(__name__)

Environment = Mapping[str, Union[Jet, Sequence[Jet]]]
IndexFilter = Callable[[MultiIndex], bool]


def resolve_leaves(e: OperatorExpr, env: Environment) -> Dict[LeafKey, Jet]:
    """Bind every input leaf of `e` to the jet of its name at its base point"""
    bound: Dict[LeafKey, Jet] = {}
    for (name, base), _leaf in e.leaves().items():
        if name not in env:
            raise UnboundGerm(f"no jet bound to germ {name!r}", "apply_expr")
        candidates = env[name]
        if isinstance(candidates, Jet):
            candidates = [candidates]
        match = next((j for j in candidates if j.base == base), None)
        if match is None:
            raise BaseMismatch(f"germ {name!r} has no jet at base {base_text(base)}", "apply_expr")
        bound[(name, base)] = match
    return bound


def _evaluate(e: OperatorExpr, leaves: Mapping[LeafKey, Jet], k_out: int) -> Jet:
    memo: Dict[tuple, Jet] = {}

    def ev(node: OperatorExpr, k: int) -> Jet:
        key = (id(node), k)
        if key in memo:
            return memo[key]
        kind = node.kind
        if kind is NodeKind.GERM:
            out = truncate(leaves[(node.name, node.base)], k)
        elif kind in (NodeKind.POLY, NodeKind.GPOLY):
            if node.base is None:
                raise MalformedInput("applied polynomial evaluated without arguments", "apply_expr")
            out = from_polynomial(node.polynomial, node.base, k)
        elif kind is NodeKind.COMPOSE:
            outer, inner = node.children[0], node.children[1:]
            args = [ev(c, k) for c in inner]
            if outer.is_applied_polynomial:
                out = apply_polynomial(outer.polynomial, args)
            else:
                out = compose(ev(outer, k), args)
        elif kind is NodeKind.SCHWARZ:
            out = schwarz(ev(node.children[0], k))
        elif kind is NodeKind.PARTIAL:
            out = partial_derivative(ev(node.children[0], k + 1), node.axis)
        elif kind is NodeKind.IMPLICIT:
            out = implicit_fn(ev(node.children[0], k), k)
        elif kind is NodeKind.MDIV:
            out = monomial_div(ev(node.children[0], k + 1))
        else:
            m = node.ramification
            out = deramify(ev(node.children[0], m * k), m)
        memo[key] = out
        return out

    return ev(e, k_out)


def apply_expr(e: OperatorExpr, env: Environment, k_out: int) -> Jet:
    """Output jet of order `k_out` of the operator on the bound input germs.

    Raises:
        UnboundGerm: a leaf name is missing from `env`
        InsufficientOrder: an input jet is shorter than the shift bound requires
        OperatorDomainError: an elementary operator rejected an intermediate jet
    """
    leaves = resolve_leaves(e, env)
    required = shift_bound(e).required_orders(k_out)
    for leaf, need in required.items():
        have = leaves[leaf].order
        if have < need:
            raise InsufficientOrder(
                f"germ {leaf[0]!r} at {base_text(leaf[1])} has order {have}, output order {k_out} needs {need}",
                "apply_expr",
                required=need,
            )
    logger.debug("apply_expr %s at order %d", e, k_out)
    return _evaluate(e, leaves, k_out)


def _perturbed(jet: Jet, alpha: MultiIndex, coeff: GaussianRational) -> Jet:
    padded = pad_order(jet, max(jet.order, degree(alpha)))
    coeffs = dict(padded.coeffs)
    coeffs[alpha] = coeffs.get(alpha, ZERO) + coeff
    return Jet(padded.dim, padded.order, padded.base, coeffs)


def measure_shift_lower_bound(e: OperatorExpr, env: Environment, n: int, probe_order: int) -> bool:
    """True iff adding a monomial of degree `probe_order` to one input changes the output at order ≤ n.

    A true result certifies that the shift of `e` at n is at least
    `probe_order`. Perturbations that leave an operator's domain are skipped.
    """
    leaves = resolve_leaves(e, env)
    baseline = _evaluate(e, _checked(e, leaves, n), n)
    for leaf, jet in leaves.items():
        for alpha in indices_of_degree(jet.dim, probe_order):
            trial = dict(leaves)
            trial[leaf] = _perturbed(jet, alpha, ONE)
            try:
                out = _evaluate(e, trial, n)
            except OperatorDomainError:
                continue
            if out != baseline:
                logger.debug("probe %s on %s changes the output at order %d", alpha, leaf[0], n)
                return True
    return False


def _checked(e: OperatorExpr, leaves: Mapping[LeafKey, Jet], n: int) -> Mapping[LeafKey, Jet]:
    for leaf, need in shift_bound(e).required_orders(n).items():
        if leaves[leaf].order < need:
            raise InsufficientOrder(
                f"germ {leaf[0]!r} has order {leaves[leaf].order}, probing at {n} needs {need}",
                "measure_shift_lower_bound",
                required=need,
            )
    return leaves


def certified_shift_lower_bound(e: OperatorExpr, env: Environment, n: int) -> int:
    """Largest probe order whose perturbation is visible at output order n"""
    upper = shift_bound(e).evaluate(n)
    for probe in range(upper + 1, -1, -1):
        if measure_shift_lower_bound(e, env, n, probe):
            return probe
    return 0


@dataclass(slots=True)
class StabilityReport:
    """Outcome of a random-tail vanishing test"""
    agreement_order: int  # K: inputs are perturbed only above this degree
    tested_order: int
    trials: int
    failures: int = 0
    inadmissible: int = 0  # Perturbations rejected by an operator's domain
    first_failure: Optional[int] = None

    @property
    def stable(self) -> bool:
        return self.failures == 0


def vanishing_stability_test(
    e: OperatorExpr,
    env: Environment,
    K: int,
    trials: int,
    *,
    tested_order: Optional[int] = None,
    seed: int = 0,
    coeff_bound: int = 9,
    index_filter: Optional[IndexFilter] = None,
) -> StabilityReport:
    """Check that `e` stays zero when input tails above degree K are randomized.

    Args:
        e: Expression that vanishes on `env`
        env: Input jets; their stored orders bound the perturbed degrees
        K: Inputs keep their jets to order K
        trials: Number of random perturbations
        tested_order: Output order inspected (default: K)
        seed: Seed of the perturbation stream
        coeff_bound: Numerator and denominator bound of random coefficients
        index_filter: Restricts which multi-indices may be perturbed

    Returns:
        StabilityReport with failure and inadmissible counts
    """
    n = K if tested_order is None else tested_order
    leaves = resolve_leaves(e, env)
    baseline = _evaluate(e, _checked(e, leaves, n), n)
    if not baseline.is_zero():
        raise MalformedInput("expression does not vanish on the given inputs", "vanishing_stability_test")
    rng = random.Random(seed)
    report = StabilityReport(agreement_order=K, tested_order=n, trials=trials)
    for t in range(trials):
        trial = {}
        for leaf, jet in leaves.items():
            coeffs = dict(jet.coeffs)
            for alpha in indices_up_to(jet.dim, jet.order):
                if degree(alpha) > K and (index_filter is None or index_filter(alpha)):
                    coeffs[alpha] = GaussianRational.random(rng, coeff_bound)
            trial[leaf] = Jet(jet.dim, jet.order, jet.base, coeffs)
        try:
            out = _evaluate(e, trial, n)
        except OperatorDomainError:
            report.inadmissible += 1
            continue
        if not out.is_zero():
            report.failures += 1
            if report.first_failure is None:
                report.first_failure = t
    logger.info(
        "vanishing test K=%d: %d/%d failures, %d inadmissible", K, report.failures, trials, report.inadmissible
    )
    return report
