"""Implicit systems F = P(x, e^x) and their jet solutions.

Variables are laid out as x_0 … x_{N-1} followed by y_0 … y_{N-1}, where
y_j stands for e^{x_j}. The first `coords` x-variables are coordinates,
the remaining `size` ones are the unknowns.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from germ_calculus.errors import (
    DimensionMismatch,
    InsufficientOrder,
    MalformedInput,
    SolutionCheckFailed,
    UnsupportedExponentialBase,
)
from germ_calculus.implicit.linalg import is_invertible
from germ_calculus.models.gaussian import GaussianRational, Scalar
from germ_calculus.models.jet import (
    Jet,
    constant,
    coordinate,
    evaluate_polynomial_on_jets,
    exp_jet,
    truncate,
)
from germ_calculus.models.multi_index import MultiIndex
from germ_calculus.models.polynomial import Polynomial
from germ_calculus.operators.elementary import compose

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True, eq=False)
class ExpPolynomial:
    """P(x, y) in 2N variables, read as the function x ↦ P(x, e^x)"""
    nvars: int  # N, the number of x-variables
    poly: Polynomial

    def __post_init__(self) -> None:
        if self.poly.nvars != 2 * self.nvars:
            raise DimensionMismatch(
                f"exponential polynomial over {self.nvars} variables needs {2 * self.nvars} slots, "
                f"got {self.poly.nvars}",
                "ExpPolynomial",
            )

    @staticmethod
    def x(nvars: int, j: int) -> "ExpPolynomial":
        return ExpPolynomial(nvars, Polynomial.variable(2 * nvars, j))

    @staticmethod
    def y(nvars: int, j: int) -> "ExpPolynomial":
        """e^{x_j}"""
        return ExpPolynomial(nvars, Polynomial.variable(2 * nvars, nvars + j))

    @staticmethod
    def constant(nvars: int, value: Scalar) -> "ExpPolynomial":
        return ExpPolynomial(nvars, Polynomial.constant(2 * nvars, value))

    @staticmethod
    def from_terms(nvars: int, terms: Dict[Tuple[MultiIndex, MultiIndex], Scalar]) -> "ExpPolynomial":
        """Build from {(x-exponents, y-exponents): coefficient}"""
        return ExpPolynomial(nvars, Polynomial(2 * nvars, {tuple(xe) + tuple(ye): c for (xe, ye), c in terms.items()}))

    def monomials(self) -> List[Tuple[MultiIndex, MultiIndex, GaussianRational]]:
        n = self.nvars
        return [(alpha[:n], alpha[n:], c) for alpha, c in sorted(self.poly.terms.items())]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExpPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.nvars, self.poly))

    def _wrap(self, other: "ExpPolynomial | Scalar") -> Polynomial:
        if isinstance(other, ExpPolynomial):
            if other.nvars != self.nvars:
                raise DimensionMismatch("exponential polynomials over different variables", "ExpPolynomial")
            return other.poly
        return Polynomial.constant(2 * self.nvars, other)

    def __add__(self, other: "ExpPolynomial | Scalar") -> "ExpPolynomial":
        return ExpPolynomial(self.nvars, self.poly + self._wrap(other))

    __radd__ = __add__

    def __sub__(self, other: "ExpPolynomial | Scalar") -> "ExpPolynomial":
        return ExpPolynomial(self.nvars, self.poly - self._wrap(other))

    def __rsub__(self, other: Scalar) -> "ExpPolynomial":
        return ExpPolynomial(self.nvars, self._wrap(other) - self.poly)

    def __neg__(self) -> "ExpPolynomial":
        return ExpPolynomial(self.nvars, -self.poly)

    def __mul__(self, other: "ExpPolynomial | Scalar") -> "ExpPolynomial":
        return ExpPolynomial(self.nvars, self.poly * self._wrap(other))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "ExpPolynomial":
        return ExpPolynomial(self.nvars, self.poly ** exponent)

    def uses_exp(self, j: int) -> bool:
        return self.poly.uses_variable(self.nvars + j)

    def total_derivative(self, j: int) -> "ExpPolynomial":
        """∂/∂x_j of x ↦ P(x, e^x): ∂P/∂x_j + y_j·∂P/∂y_j"""
        n = self.nvars
        p = self.poly
        return ExpPolynomial(n, p.partial(j) + Polynomial.variable(2 * n, n + j) * p.partial(n + j))

    def conjugate(self) -> "ExpPolynomial":
        return ExpPolynomial(self.nvars, self.poly.conjugate())

    def reindex(self, nvars: int, positions: Sequence[int]) -> "ExpPolynomial":
        """Move x_j (and y_j) to slot positions[j] of a system over `nvars` variables"""
        slots = list(positions) + [nvars + p for p in positions]
        return ExpPolynomial(nvars, self.poly.extend(2 * nvars, slots))

    def __str__(self) -> str:
        names = [f"x{j}" for j in range(self.nvars)] + [f"y{j}" for j in range(self.nvars)]
        return self.poly.to_text(names)


@dataclass(frozen=True, slots=True)
class ImplicitSystem:
    """`size` exponential polynomials over `coords` coordinates and `size` unknowns"""
    components: Tuple[ExpPolynomial, ...]
    coords: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        if self.coords < 1:
            raise MalformedInput("an implicit system needs at least one coordinate", "ImplicitSystem")
        for p in self.components:
            if p.nvars != self.nvars:
                raise DimensionMismatch(
                    f"component over {p.nvars} variables in a system over {self.nvars}", "ImplicitSystem"
                )

    @property
    def size(self) -> int:
        return len(self.components)

    @property
    def nvars(self) -> int:
        return self.coords + self.size

    def unknown_axes(self) -> range:
        return range(self.coords, self.nvars)

    def uses_exp(self, j: int) -> bool:
        return any(p.uses_exp(j) for p in self.components)


@dataclass(frozen=True, slots=True)
class ImplicitSolution:
    """Jets (ψ_0, …, ψ_{N-1}) at one base point; the first `coords` are coordinate germs"""
    jets: Tuple[Jet, ...]
    coords: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "jets", tuple(self.jets))
        if len(self.jets) <= self.coords:
            raise MalformedInput("solution has no unknown components", "ImplicitSolution")
        first = self.jets[0]
        for j in self.jets:
            if j.dim != self.coords:
                raise DimensionMismatch(
                    f"solution jets must have dimension {self.coords}, got {j.dim}", "ImplicitSolution"
                )
            if j.base != first.base or j.order != first.order:
                raise MalformedInput("solution jets must share base point and order", "ImplicitSolution")
        for axis in range(self.coords):
            expected = coordinate(self.coords, first.order, first.base, axis + 1)
            if self.jets[axis] != expected:
                raise MalformedInput(f"component {axis} is not the coordinate germ", "ImplicitSolution")

    @property
    def base(self) -> Tuple[GaussianRational, ...]:
        return self.jets[0].base

    @property
    def order(self) -> int:
        return self.jets[0].order

    @property
    def defined(self) -> Jet:
        """The germ the system defines: the first unknown"""
        return self.jets[self.coords]

    @staticmethod
    def with_coordinates(unknowns: Sequence[Jet], coords: int = 1) -> "ImplicitSolution":
        """Prefix the unknown jets with the coordinate germs at their base"""
        first = unknowns[0]
        axes = [coordinate(coords, first.order, first.base, i + 1) for i in range(coords)]
        return ImplicitSolution(tuple(axes) + tuple(unknowns), coords)

    def truncated(self, order: int) -> "ImplicitSolution":
        return ImplicitSolution(tuple(truncate(j, order) for j in self.jets), self.coords)


@dataclass(slots=True)
class SolutionCheck:
    residual_zero: bool
    jacobian_invertible: bool

    @property
    def passed(self) -> bool:
        return self.residual_zero and self.jacobian_invertible


def _check_shapes(F: ImplicitSystem, psi: ImplicitSolution, k: int, operator: str) -> None:
    if F.coords != psi.coords or F.nvars != len(psi.jets):
        raise DimensionMismatch(
            f"system over {F.coords}+{F.size} variables, solution with {psi.coords} coordinates "
            f"and {len(psi.jets)} components",
            operator,
        )
    if k > psi.order:
        raise InsufficientOrder(f"solution of order {psi.order} checked at {k}", operator, required=k)


def exponential_jets(
    components: Sequence[ExpPolynomial], psi: ImplicitSolution, k: int, operator: str = "eval_residual"
) -> List[Jet]:
    """Jets of e^{ψ_j} to order k for the y-variables the system uses.

    Unused slots hold the zero jet. A used slot requires ψ_j(a) = 0, where
    e^{ψ_j} is exp composed with ψ_j.
    """
    out: List[Jet] = []
    for j, jet in enumerate(psi.jets):
        if not any(p.uses_exp(j) for p in components):
            out.append(constant(psi.coords, k, psi.base, 0))
            continue
        if jet.value:
            raise UnsupportedExponentialBase(
                f"e^ψ_{j} needs ψ_{j}(a) = 0 to stay in Q(i), got {jet.value}", operator
            )
        out.append(compose(exp_jet(k), [truncate(jet, k)]))
    return out


def eval_residual(F: ImplicitSystem, psi: ImplicitSolution, k: int) -> Tuple[Jet, ...]:
    """Jets of F(Ψ(z)) to order k"""
    _check_shapes(F, psi, k, "eval_residual")
    xs = [truncate(j, k) for j in psi.jets]
    ys = exponential_jets(F.components, psi, k)
    return tuple(evaluate_polynomial_on_jets(p.poly, xs + ys, k) for p in F.components)


def gradients(
    components: Sequence[ExpPolynomial], psi: ImplicitSolution, operator: str = "check_solution"
) -> List[List[GaussianRational]]:
    """Rows ∂p/∂x_j at the base point for each component, j over the unknowns of `psi`"""
    xs = [truncate(j, 0) for j in psi.jets]
    ys = exponential_jets(components, psi, 0, operator)
    unknowns = range(psi.coords, len(psi.jets))
    return [
        [evaluate_polynomial_on_jets(p.total_derivative(j).poly, xs + ys, 0).value for j in unknowns]
        for p in components
    ]


def jacobian(F: ImplicitSystem, psi: ImplicitSolution, operator: str = "check_solution") -> List[List[GaussianRational]]:
    """∂F_i/∂x_j at the base point, j over the unknowns"""
    _check_shapes(F, psi, 0, operator)
    return gradients(F.components, psi, operator)


def check_solution(F: ImplicitSystem, psi: ImplicitSolution, k: Optional[int] = None) -> SolutionCheck:
    """Residual vanishes to order k and ∂F/∂x′ is invertible at the base"""
    k = psi.order if k is None else k
    residual_zero = all(r.is_zero() for r in eval_residual(F, psi, k))
    invertible = is_invertible(jacobian(F, psi))
    logger.debug("check_solution: residual_zero=%s invertible=%s", residual_zero, invertible)
    return SolutionCheck(residual_zero, invertible)


def require_solution(F: ImplicitSystem, psi: ImplicitSolution, operator: str, role: str = "input") -> None:
    result = check_solution(F, psi)
    if not result.passed:
        raise SolutionCheckFailed(
            f"{role} pair fails check_solution (residual_zero={result.residual_zero}, "
            f"jacobian_invertible={result.jacobian_invertible})",
            operator,
        )
