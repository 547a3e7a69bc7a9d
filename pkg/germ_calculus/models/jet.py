"""Truncated Taylor jets over Q(i) and their exact arithmetic"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from germ_calculus.errors import BaseMismatch, DimensionMismatch, InsufficientOrder, MalformedInput
from germ_calculus.models.gaussian import ONE, ZERO, GaussianRational, Scalar
from germ_calculus.models.multi_index import (
    MultiIndex,
    add_indices,
    degree,
    indices_up_to,
    multi_factorial,
    zero_index,
)
from germ_calculus.models.polynomial import Polynomial

Point = Tuple[GaussianRational, ...]
Coeffs = Dict[MultiIndex, GaussianRational]


def make_point(values: Iterable[Scalar]) -> Point:
    return tuple(GaussianRational.of(v) for v in values)


@dataclass(frozen=True, slots=True)
class Jet:
    """Σ_{|α|≤order} c_α (z − base)^α with c_α = ∂_α f(base)/α!

    Only nonzero coefficients are stored; absent multi-indices are zero.
    """
    dim: int
    order: int
    base: Point
    coeffs: Coeffs = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise DimensionMismatch(f"jet dimension must be positive, got {self.dim}", "Jet")
        if self.order < 0:
            raise MalformedInput(f"jet order must be non-negative, got {self.order}", "Jet")
        base = make_point(self.base)
        if len(base) != self.dim:
            raise DimensionMismatch(f"base point has {len(base)} coordinates, expected {self.dim}", "Jet")
        coeffs: Coeffs = {}
        for alpha, c in self.coeffs.items():
            alpha = tuple(alpha)
            if len(alpha) != self.dim or any(e < 0 for e in alpha):
                raise DimensionMismatch(f"multi-index {alpha} invalid for dimension {self.dim}", "Jet")
            if degree(alpha) > self.order:
                raise MalformedInput(f"multi-index {alpha} exceeds order {self.order}", "Jet")
            c = GaussianRational.of(c)
            if c:
                coeffs[alpha] = c
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "coeffs", coeffs)

    def __hash__(self) -> int:
        return hash((self.dim, self.order, self.base, frozenset(self.coeffs.items())))

    def coefficient(self, alpha: MultiIndex) -> GaussianRational:
        return self.coeffs.get(tuple(alpha), ZERO)

    @property
    def value(self) -> GaussianRational:
        """f(base)"""
        return self.coeffs.get(zero_index(self.dim), ZERO)

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self) -> Optional[int]:
        """Lowest degree with a nonzero coefficient; None for the zero jet"""
        return min((degree(a) for a in self.coeffs), default=None)

    def homogeneous_part(self, d: int) -> Coeffs:
        return {a: c for a, c in self.coeffs.items() if degree(a) == d}

    def __add__(self, other: "Jet") -> "Jet":
        return add(self, other)

    def __sub__(self, other: "Jet") -> "Jet":
        return sub(self, other)

    def __neg__(self) -> "Jet":
        return neg(self)

    def __mul__(self, other: "Jet | Scalar") -> "Jet":
        if isinstance(other, Jet):
            return mul(self, other)
        return scale(self, other)

    def __rmul__(self, other: Scalar) -> "Jet":
        return scale(self, other)


@dataclass(frozen=True, slots=True)
class JetTuple:
    """Jets of one germ family at pairwise distinct points, all of one order"""
    jets: Tuple[Jet, ...]

    @property
    def order(self) -> int:
        return self.jets[0].order

    @property
    def points(self) -> Tuple[Point, ...]:
        return tuple(j.base for j in self.jets)

    def derivatives(self) -> List[Dict[MultiIndex, GaussianRational]]:
        """(∂_α f(a_i))_{|α|≤k} for every point, including zero entries"""
        return [derivative_values(j) for j in self.jets]

    def entry_count(self) -> int:
        return sum(len(d) for d in self.derivatives())


# --- construction ---

def constant(dim: int, order: int, base: Sequence[Scalar], value: Scalar) -> Jet:
    return Jet(dim, order, make_point(base), {zero_index(dim): value})


def coordinate(dim: int, order: int, base: Sequence[Scalar], axis: int) -> Jet:
    """Coordinate germ z_axis at base (1-based axis)"""
    if not 1 <= axis <= dim:
        raise DimensionMismatch(f"axis {axis} outside 1..{dim}", "coordinate")
    point = make_point(base)
    coeffs: Coeffs = {zero_index(dim): point[axis - 1]}
    if order >= 1:
        coeffs[tuple(1 if i == axis - 1 else 0 for i in range(dim))] = ONE
    return Jet(dim, order, point, coeffs)


def exp_jet(order: int) -> Jet:
    """e^z at 0, coefficients 1/n!"""
    return Jet(1, order, (ZERO,), {(n,): GaussianRational(Fraction(1, factorial(n))) for n in range(order + 1)})


def from_polynomial(poly: Polynomial | Mapping[MultiIndex, Scalar], base: Sequence[Scalar], order: int) -> Jet:
    """Jet of a polynomial re-centered at `base`, truncated to `order`"""
    point = make_point(base)
    if not isinstance(poly, Polynomial):
        terms = dict(poly)
        nvars = len(next(iter(terms))) if terms else len(point)
        poly = Polynomial(nvars, terms)
    if poly.nvars != len(point):
        raise DimensionMismatch(
            f"polynomial in {poly.nvars} variables, base point of length {len(point)}", "from_polynomial"
        )
    centered = poly.translate(point).truncate(order)
    return Jet(len(point), order, point, centered.terms)


def as_polynomial(f: Jet) -> Polynomial:
    """Stored coefficients as a polynomial in w = z − base"""
    return Polynomial(f.dim, f.coeffs)


# --- arithmetic ---

def _require_compatible(f: Jet, g: Jet, operator: str) -> None:
    if f.dim != g.dim:
        raise DimensionMismatch(f"dimensions {f.dim} and {g.dim} differ", operator)
    if f.base != g.base:
        raise BaseMismatch(
            f"base points ({', '.join(map(str, f.base))}) and ({', '.join(map(str, g.base))}) differ",
            operator,
        )


def add(f: Jet, g: Jet) -> Jet:
    _require_compatible(f, g, "add")
    order = min(f.order, g.order)
    coeffs: Coeffs = {a: c for a, c in f.coeffs.items() if degree(a) <= order}
    for alpha, c in g.coeffs.items():
        if degree(alpha) <= order:
            coeffs[alpha] = coeffs.get(alpha, ZERO) + c
    return Jet(f.dim, order, f.base, coeffs)


def neg(f: Jet) -> Jet:
    return Jet(f.dim, f.order, f.base, {a: -c for a, c in f.coeffs.items()})


def sub(f: Jet, g: Jet) -> Jet:
    _require_compatible(f, g, "sub")
    return add(f, neg(g))


def scale(f: Jet, factor: Scalar) -> Jet:
    factor = GaussianRational.of(factor)
    return Jet(f.dim, f.order, f.base, {a: c * factor for a, c in f.coeffs.items()})


def _graded(coeffs: Coeffs) -> List[Tuple[MultiIndex, GaussianRational, int]]:
    return sorted(((a, c, degree(a)) for a, c in coeffs.items()), key=lambda t: t[2])


def _product(fc: Coeffs, gc: Coeffs, order: int) -> Coeffs:
    """Cauchy product of two coefficient maps, truncated to `order`"""
    g_items = _graded(gc)
    out: Coeffs = {}
    for alpha, c, da in _graded(fc):
        if da > order:
            break
        for beta, d, db in g_items:
            if da + db > order:
                break
            key = add_indices(alpha, beta)
            out[key] = out.get(key, ZERO) + c * d
    return out


def mul(f: Jet, g: Jet) -> Jet:
    _require_compatible(f, g, "mul")
    order = min(f.order, g.order)
    return Jet(f.dim, order, f.base, _product(f.coeffs, g.coeffs, order))


def power(f: Jet, exponent: int) -> Jet:
    result = constant(f.dim, f.order, f.base, 1)
    for _ in range(exponent):
        result = mul(result, f)
    return result


def partial_derivative(f: Jet, j: int) -> Jet:
    """∂f/∂z_j (1-based j); the result has order f.order − 1"""
    if not 1 <= j <= f.dim:
        raise DimensionMismatch(f"axis {j} outside 1..{f.dim}", "partial_derivative")
    if f.order == 0:
        raise InsufficientOrder("cannot differentiate a jet of order 0", "partial_derivative", required=1)
    axis = j - 1
    coeffs: Coeffs = {}
    for alpha, c in f.coeffs.items():
        e = alpha[axis]
        if e:
            coeffs[alpha[:axis] + (e - 1,) + alpha[axis + 1:]] = c * e
    return Jet(f.dim, f.order - 1, f.base, coeffs)


def truncate(f: Jet, order: int) -> Jet:
    if order > f.order:
        raise InsufficientOrder(f"cannot truncate order {f.order} to {order}", "truncate", required=order)
    return Jet(f.dim, order, f.base, {a: c for a, c in f.coeffs.items() if degree(a) <= order})


def pad_order(f: Jet, order: int) -> Jet:
    """Raise the stored order by appending a zero tail"""
    if order <= f.order:
        return truncate(f, order)
    return Jet(f.dim, order, f.base, f.coeffs)


def equal_to_order(f: Jet, g: Jet, k: int) -> bool:
    _require_compatible(f, g, "equal_to_order")
    if k > f.order or k > g.order:
        raise InsufficientOrder(
            f"comparison order {k} exceeds stored orders {f.order}, {g.order}", "equal_to_order", required=k
        )
    for alpha in set(f.coeffs) | set(g.coeffs):
        if degree(alpha) <= k and f.coefficient(alpha) != g.coefficient(alpha):
            return False
    return True


def evaluate_truncated(f: Jet, p: Sequence[Scalar]) -> GaussianRational:
    if len(p) != f.dim:
        raise DimensionMismatch(f"point of length {len(p)} for dimension {f.dim}", "evaluate_truncated")
    offset = [GaussianRational.of(x) - a for x, a in zip(p, f.base)]
    return as_polynomial(f).evaluate(offset)


def derivative_values(f: Jet) -> Dict[MultiIndex, GaussianRational]:
    """∂_α f(base) = α!·c_α for every |α| ≤ order"""
    return {alpha: f.coefficient(alpha) * multi_factorial(alpha) for alpha in indices_up_to(f.dim, f.order)}


def jet_tuple(f_jets: Sequence[Jet], k: int) -> JetTuple:
    if not f_jets:
        raise MalformedInput("jet_tuple needs at least one jet", "jet_tuple")
    dim = f_jets[0].dim
    seen = set()
    out = []
    for f in f_jets:
        if f.dim != dim:
            raise DimensionMismatch(f"dimensions {dim} and {f.dim} differ", "jet_tuple")
        if f.base in seen:
            raise BaseMismatch(f"duplicate base point ({', '.join(map(str, f.base))})", "jet_tuple")
        seen.add(f.base)
        if f.order < k:
            raise InsufficientOrder(f"jet of order {f.order} is below {k}", "jet_tuple", required=k)
        out.append(truncate(f, k))
    return JetTuple(tuple(out))


def evaluate_polynomial_on_jets(poly: Polynomial, jets: Sequence[Jet], order: Optional[int] = None) -> Jet:
    """P(g_1, …, g_n) for jets sharing one base point, truncated to `order`.

    `order` defaults to the smallest input order. Monomials whose valuation
    already exceeds the order are skipped.
    """
    if len(jets) != poly.nvars:
        raise DimensionMismatch(f"{len(jets)} jets for {poly.nvars} variables", "evaluate_polynomial_on_jets")
    if not jets:
        raise MalformedInput("no jets to substitute", "evaluate_polynomial_on_jets")
    first = jets[0]
    for g in jets[1:]:
        _require_compatible(first, g, "evaluate_polynomial_on_jets")
    if order is None:
        order = min(g.order for g in jets)
    elif order > min(g.order for g in jets):
        raise InsufficientOrder(
            f"requested order {order} exceeds input orders", "evaluate_polynomial_on_jets", required=order
        )
    sources = [{a: c for a, c in g.coeffs.items() if degree(a) <= order} for g in jets]
    valuations = [min((degree(a) for a in s), default=order + 1) for s in sources]
    one: Coeffs = {zero_index(first.dim): ONE}
    memo: Dict[MultiIndex, Coeffs] = {zero_index(poly.nvars): one}

    def monomial(alpha: MultiIndex) -> Coeffs:
        if alpha in memo:
            return memo[alpha]
        j = max(i for i, e in enumerate(alpha) if e)
        prev = alpha[:j] + (alpha[j] - 1,) + alpha[j + 1:]
        memo[alpha] = _product(monomial(prev), sources[j], order)
        return memo[alpha]

    out: Coeffs = {}
    for alpha in sorted(poly.terms, key=degree):
        if sum(e * v for e, v in zip(alpha, valuations)) > order:
            continue
        c = poly.terms[alpha]
        for beta, d in monomial(alpha).items():
            out[beta] = out.get(beta, ZERO) + c * d
    return Jet(first.dim, order, first.base, out)
