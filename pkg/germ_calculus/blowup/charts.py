"""Blow-up of the origin of C² in the charts π_λ, and blow-down of jets"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from germ_calculus.errors import (
    BaseMismatch,
    DimensionMismatch,
    InsufficientOrder,
    MalformedInput,
    NotABlowDown,
)
from germ_calculus.models.gaussian import ZERO, GaussianRational, Scalar
from germ_calculus.models.jet import Coeffs, Jet, from_polynomial, truncate
from germ_calculus.models.polynomial import Polynomial
from germ_calculus.operators.elementary import compose

logger = logging.getLogger(__name__)

ORIGIN = (ZERO, ZERO)


@dataclass(frozen=True, slots=True)
class Chart:
    """Chart label λ ∈ Q(i) ∪ {∞}; `value` None stands for ∞"""
    value: Optional[GaussianRational] = ZERO

    def __post_init__(self) -> None:
        if self.value is not None:
            object.__setattr__(self, "value", GaussianRational.of(self.value))

    @staticmethod
    def infinity() -> "Chart":
        return Chart(None)

    @staticmethod
    def of(label: "Chart | Scalar | str") -> "Chart":
        if isinstance(label, Chart):
            return label
        if isinstance(label, str):
            if label.strip().lower() in ("inf", "infinity", "∞"):
                return Chart(None)
            return Chart(GaussianRational.parse(label))
        return Chart(GaussianRational.of(label))

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    @property
    def label(self) -> str:
        return "inf" if self.value is None else str(self.value)

    def __str__(self) -> str:
        return self.label

    def map_polynomials(self) -> Tuple[Polynomial, Polynomial]:
        """π_λ(z1, z2) = (z1, (λ + z2)·z1); π_∞(z1, z2) = (z1·z2, z2)"""
        z1 = Polynomial.variable(2, 0)
        z2 = Polynomial.variable(2, 1)
        if self.value is None:
            return z1 * z2, z2
        return z1, (z2 + self.value) * z1

    def image(self, point: Sequence[Scalar]) -> Tuple[GaussianRational, GaussianRational]:
        p1, p2 = self.map_polynomials()
        return p1.evaluate(point), p2.evaluate(point)


def _require_origin(f: Jet, operator: str) -> None:
    if f.dim != 2:
        raise DimensionMismatch(f"blow-up of C² needs a jet of dimension 2, got {f.dim}", operator)
    if f.base != ORIGIN:
        raise BaseMismatch("jet must be based at the origin", operator)


def blow_up_jet(f: Jet, chart: "Chart | Scalar | str" = 0, k_out: Optional[int] = None) -> Jet:
    """Jet of f ∘ π_λ at 0, by composition with the chart polynomials"""
    _require_origin(f, "blow_up_jet")
    chart = Chart.of(chart)
    k = f.order if k_out is None else k_out
    if k > f.order:
        raise InsufficientOrder(f"blow-up to order {k} needs f of order {k}", "blow_up_jet", required=k)
    inner = [from_polynomial(p, ORIGIN, k) for p in chart.map_polynomials()]
    return compose(truncate(f, k), inner)


def blow_down_reconstruct(g: Jet, k: Optional[int] = None, chart: "Chart | Scalar | str" = 0) -> Jet:
    """The jet f of order k with f ∘ π_λ = g, read off chart-λ data of order 2k.

    Chart 0: c_{i,j} is the coefficient of z1^{i+j} z2^j. Chart λ: for each
    z1-degree p the z2-polynomial has degree ≤ p and is shifted by −λ.
    Chart ∞: c_{i,j} is the coefficient of z1^i z2^{i+j}.
    """
    _require_origin(g, "blow_down_reconstruct")
    chart = Chart.of(chart)
    k = g.order // 2 if k is None else k
    if 2 * k > g.order:
        raise InsufficientOrder(
            f"reconstruction to order {k} needs chart data of order {2 * k}, got {g.order}",
            "blow_down_reconstruct",
            required=2 * k,
        )
    out: Coeffs = {}
    if chart.is_infinite:
        for (p, q), c in g.coeffs.items():
            if q < p:
                raise NotABlowDown(f"coefficient {c} of z1^{p} z2^{q} with {q} < {p}", "blow_down_reconstruct")
            if q <= k:
                out[(p, q - p)] = c
        return Jet(2, k, ORIGIN, out)

    for (p, q), c in g.coeffs.items():
        if p < q:
            raise NotABlowDown(f"coefficient {c} of z1^{p} z2^{q} with {p} < {q}", "blow_down_reconstruct")
    for p in range(k + 1):
        column = Polynomial(1, {(q,): g.coefficient((p, q)) for q in range(p + 1)})
        if chart.value:
            column = column.translate([-chart.value])
        for (j,), c in column.terms.items():
            out[(p - j, j)] = c
    return Jet(2, k, ORIGIN, out)


def charts_consistent(
    g1: Jet, chart1: "Chart | Scalar | str", g2: Jet, chart2: "Chart | Scalar | str", k: int
) -> bool:
    """True iff both chart jets are blow-ups of one jet f, compared to order k"""
    try:
        f1 = blow_down_reconstruct(g1, k, chart1)
        f2 = blow_down_reconstruct(g2, k, chart2)
    except NotABlowDown as e:
        logger.debug("charts_consistent: %s", e)
        return False
    return f1 == f2


def chart_transition_check(f: Jet, chart1: "Chart | Scalar | str", chart2: "Chart | Scalar | str", k: int) -> bool:
    """Blow f up in two charts to order 2k and compare the reconstructions"""
    if f.order < 2 * k:
        raise InsufficientOrder(f"f of order {f.order} below {2 * k}", "chart_transition_check", required=2 * k)
    g1 = blow_up_jet(f, chart1, 2 * k)
    g2 = blow_up_jet(f, chart2, 2 * k)
    return charts_consistent(g1, chart1, g2, chart2, k)


def divisor_constancy_check(g: Jet, chart: "Chart | Scalar | str" = 0) -> bool:
    """True iff g is constant along the exceptional divisor of its chart.

    The divisor is z1 = 0 in finite charts and z2 = 0 in chart ∞.
    """
    _require_origin(g, "divisor_constancy_check")
    axis = 1 if Chart.of(chart).is_infinite else 0
    return not any(alpha[axis] == 0 and any(alpha) for alpha in g.coeffs)


@dataclass(slots=True)
class NonlocalityWitness:
    """A polynomial that is flat at every listed chart point but not at the probe"""
    polynomial: Polynomial
    images: List[Tuple[GaussianRational, GaussianRational]]
    chart_jets_vanish: bool
    probe_value: GaussianRational

    @property
    def holds(self) -> bool:
        return self.chart_jets_vanish and bool(self.probe_value)


def nonlocality_witness(
    points: Sequence[Tuple["Chart | Scalar | str", Sequence[Scalar]]],
    k: int,
    probe: Sequence[Scalar],
) -> NonlocalityWitness:
    """Separate finitely many chart germs from a point outside their images.

    P = Π (z1 − b1)^k (z2 − b2)^k over the images b = π_λ(a′) vanishes to
    order 2k − 1 at every b, so every chart jet of P ∘ π_λ of order k at a′
    is zero, like the chart jets of the zero germ, while P(probe) ≠ 0 when
    the probe avoids the lines through the images.
    """
    if not points:
        raise MalformedInput("nonlocality witness needs at least one chart point", "nonlocality_witness")
    z1 = Polynomial.variable(2, 0)
    z2 = Polynomial.variable(2, 1)
    poly = Polynomial.constant(2, 1)
    images = []
    for label, point in points:
        chart = Chart.of(label)
        b1, b2 = chart.image(point)
        images.append((b1, b2))
        poly = poly * (z1 - b1) ** k * (z2 - b2) ** k
    vanish = True
    for (label, point), image in zip(points, images):
        chart = Chart.of(label)
        inner = [from_polynomial(p, point, k) for p in chart.map_polynomials()]
        if not compose(from_polynomial(poly, image, k), inner).is_zero():
            vanish = False
    value = poly.evaluate(probe)
    return NonlocalityWitness(poly, images, vanish, value)
