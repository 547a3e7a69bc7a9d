"""Sparse multivariate polynomials over Q(i)

Used for the polynomial operators, the exponential polynomials of implicit
systems and the blow-up chart maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

from germ_calculus.errors import DimensionMismatch
from germ_calculus.models.gaussian import ONE, ZERO, GaussianRational, Scalar
from germ_calculus.models.multi_index import MultiIndex, add_indices, degree, zero_index


def _clean(terms: Mapping[MultiIndex, Scalar]) -> Dict[MultiIndex, GaussianRational]:
    out: Dict[MultiIndex, GaussianRational] = {}
    for alpha, c in terms.items():
        c = GaussianRational.of(c)
        if c:
            out[tuple(alpha)] = c
    return out


@dataclass(frozen=True, slots=True, eq=False)
class Polynomial:
    """Σ c_α x^α in `nvars` variables; absent monomials are zero"""
    nvars: int
    terms: Dict[MultiIndex, GaussianRational] = field(default_factory=dict)

    def __post_init__(self) -> None:
        terms = _clean(self.terms)
        for alpha in terms:
            if len(alpha) != self.nvars:
                raise DimensionMismatch(
                    f"monomial {alpha} does not have {self.nvars} exponents", "Polynomial"
                )
            if any(e < 0 for e in alpha):
                raise DimensionMismatch(f"negative exponent in {alpha}", "Polynomial")
        object.__setattr__(self, "terms", terms)

    # --- constructors ---
    @staticmethod
    def constant(nvars: int, value: Scalar) -> "Polynomial":
        return Polynomial(nvars, {zero_index(nvars): value})

    @staticmethod
    def variable(nvars: int, axis: int) -> "Polynomial":
        """The coordinate x_axis (0-based)"""
        if not 0 <= axis < nvars:
            raise DimensionMismatch(f"variable {axis} out of range for {nvars} variables", "Polynomial")
        return Polynomial(nvars, {tuple(1 if i == axis else 0 for i in range(nvars)): ONE})

    @staticmethod
    def monomial(alpha: MultiIndex, coeff: Scalar = 1) -> "Polynomial":
        return Polynomial(len(alpha), {tuple(alpha): coeff})

    # --- inspection ---
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial"""
        return max((degree(a) for a in self.terms), default=-1)

    def coefficient(self, alpha: MultiIndex) -> GaussianRational:
        return self.terms.get(tuple(alpha), ZERO)

    def uses_variable(self, axis: int) -> bool:
        return any(alpha[axis] for alpha in self.terms)

    # --- ring operations ---
    def _check(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise DimensionMismatch(
                f"polynomials in {self.nvars} and {other.nvars} variables", "Polynomial"
            )

    def __add__(self, other: "Polynomial | Scalar") -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        self._check(other)
        terms = dict(self.terms)
        for alpha, c in other.terms.items():
            terms[alpha] = terms.get(alpha, ZERO) + c
        return Polynomial(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other: "Polynomial | Scalar") -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "Polynomial":
        return (-self) + other

    def scale(self, factor: Scalar) -> "Polynomial":
        factor = GaussianRational.of(factor)
        return Polynomial(self.nvars, {a: c * factor for a, c in self.terms.items()})

    def __mul__(self, other: "Polynomial | Scalar") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        terms: Dict[MultiIndex, GaussianRational] = {}
        for alpha, c in self.terms.items():
            for beta, d in other.terms.items():
                key = add_indices(alpha, beta)
                terms[key] = terms.get(key, ZERO) + c * d
        return Polynomial(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def truncate(self, order: int) -> "Polynomial":
        """Drop every monomial of total degree above `order`"""
        return Polynomial(self.nvars, {a: c for a, c in self.terms.items() if degree(a) <= order})

    def partial(self, axis: int) -> "Polynomial":
        """∂/∂x_axis (0-based axis)"""
        terms: Dict[MultiIndex, GaussianRational] = {}
        for alpha, c in self.terms.items():
            e = alpha[axis]
            if e:
                key = alpha[:axis] + (e - 1,) + alpha[axis + 1:]
                terms[key] = c * e
        return Polynomial(self.nvars, terms)

    def conjugate(self) -> "Polynomial":
        """Conjugate every coefficient"""
        return Polynomial(self.nvars, {a: c.conjugate() for a, c in self.terms.items()})

    def evaluate(self, point: Sequence[Scalar]) -> GaussianRational:
        if len(point) != self.nvars:
            raise DimensionMismatch(
                f"point of length {len(point)} for {self.nvars} variables", "Polynomial.evaluate"
            )
        point = [GaussianRational.of(p) for p in point]
        powers: List[Dict[int, GaussianRational]] = [{0: ONE} for _ in point]
        total = ZERO
        for alpha, c in self.terms.items():
            term = c
            for i, e in enumerate(alpha):
                if e:
                    cache = powers[i]
                    if e not in cache:
                        cache[e] = point[i] ** e
                    term = term * cache[e]
            total = total + term
        return total

    def substitute(self, images: Sequence["Polynomial"], truncate_at: Optional[int] = None) -> "Polynomial":
        """Replace x_i by images[i]; all images share one variable count.

        With `truncate_at`, every intermediate product is truncated to that
        total degree, which is exact for the truncated result.
        """
        if len(images) != self.nvars:
            raise DimensionMismatch(
                f"{len(images)} images for {self.nvars} variables", "Polynomial.substitute"
            )
        if not images:
            return self
        target = images[0].nvars
        for img in images:
            if img.nvars != target:
                raise DimensionMismatch("substitution images differ in variable count", "Polynomial.substitute")

        def cut(p: Polynomial) -> Polynomial:
            return p.truncate(truncate_at) if truncate_at is not None else p

        powers: List[Dict[int, Polynomial]] = [{0: Polynomial.constant(target, 1)} for _ in images]

        def power(i: int, e: int) -> Polynomial:
            cache = powers[i]
            if e not in cache:
                cache[e] = cut(power(i, e - 1) * images[i])
            return cache[e]

        result = Polynomial(target)
        for alpha, c in self.terms.items():
            term = Polynomial.constant(target, c)
            for i, e in enumerate(alpha):
                if e:
                    term = cut(term * power(i, e))
            result = result + term
        return result

    def translate(self, point: Sequence[Scalar]) -> "Polynomial":
        """P(point + w) as a polynomial in w"""
        shifted = [
            Polynomial.variable(self.nvars, i) + GaussianRational.of(p) for i, p in enumerate(point)
        ]
        return self.substitute(shifted)

    def extend(self, nvars: int, positions: Sequence[int]) -> "Polynomial":
        """Re-index into `nvars` variables, variable i moving to positions[i]"""
        terms: Dict[MultiIndex, GaussianRational] = {}
        for alpha, c in self.terms.items():
            key = [0] * nvars
            for i, e in enumerate(alpha):
                key[positions[i]] += e
            terms[tuple(key)] = c
        return Polynomial(nvars, terms)

    # --- text ---
    def to_text(self, names: Optional[Sequence[str]] = None) -> str:
        """Render in the prefix syntax used by operator expressions"""
        if names is None:
            names = ["z"] if self.nvars == 1 else [f"z{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for alpha in sorted(self.terms, key=lambda a: (degree(a), tuple(-e for e in a))):
            factors = [_scalar_text(self.terms[alpha])]
            for i, e in enumerate(alpha):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"(^ {names[i]} {e})")
            if len(factors) > 1 and self.terms[alpha] == 1:
                factors = factors[1:]
            parts.append(factors[0] if len(factors) == 1 else f"(* {' '.join(factors)})")
        return parts[0] if len(parts) == 1 else f"(+ {' '.join(parts)})"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {self.to_text()})"


def _scalar_text(c: GaussianRational) -> str:
    return str(c)


def from_terms(nvars: int, terms: Iterable[tuple]) -> Polynomial:
    """Build from (alpha, coeff) pairs, adding repeated monomials"""
    acc: Dict[MultiIndex, GaussianRational] = {}
    for alpha, c in terms:
        acc[tuple(alpha)] = acc.get(tuple(alpha), ZERO) + GaussianRational.of(c)
    return Polynomial(nvars, acc)
