"""Operator expressions: DAGs of elementary operators over named input germs"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, Optional, Tuple

from germ_calculus.errors import DimensionMismatch, MalformedInput
from germ_calculus.models.jet import Point, make_point
from germ_calculus.models.polynomial import Polynomial


class NodeKind(Enum):
    """Kind of an expression node; the value is its head in the text syntax"""
    GERM = "germ"            # Named input germ at a base point
    POLY = "poly"            # Polynomial germ P_a, arbitrary coefficients
    GPOLY = "gpoly"          # Gaussian polynomial germ, ∅-definable
    SCHWARZ = "schwarz"
    COMPOSE = "compose"      # First child is the outer germ
    PARTIAL = "partial"
    IMPLICIT = "implicit"
    MDIV = "mdiv"
    DERAM = "deram"


class OperatorClass(Enum):
    """Smallest operator class containing an expression"""
    B = "B*"
    C = "C*"
    D = "D*"


_UNARY = {NodeKind.SCHWARZ, NodeKind.PARTIAL, NodeKind.IMPLICIT, NodeKind.MDIV, NodeKind.DERAM}

LeafKey = Tuple[str, Point]


@dataclass(frozen=True, slots=True, eq=False)
class OperatorExpr:
    """One node of an operator DAG.

    Nodes compare by identity, so a shared sub-expression is evaluated once
    per output order. A POLY/GPOLY node without base point is only valid as
    the outer child of a COMPOSE node: it is then applied to the values of
    the inner children (the `poly-apply` form).
    """
    kind: NodeKind
    children: Tuple["OperatorExpr", ...] = ()
    name: Optional[str] = None
    base: Optional[Point] = None
    polynomial: Optional[Polynomial] = None
    axis: Optional[int] = None  # 1-based, PARTIAL only
    ramification: Optional[int] = None  # DERAM only

    def __post_init__(self) -> None:
        if self.base is not None:
            object.__setattr__(self, "base", make_point(self.base))
        kind, arity = self.kind, len(self.children)
        if kind is NodeKind.GERM:
            if arity or not self.name or self.base is None:
                raise MalformedInput("germ leaf needs a name and a base point", "OperatorExpr")
        elif kind in (NodeKind.POLY, NodeKind.GPOLY):
            if arity or self.polynomial is None:
                raise MalformedInput(f"{kind.value} node needs a polynomial and no children", "OperatorExpr")
            if self.base is not None and len(self.base) != self.polynomial.nvars:
                raise DimensionMismatch(
                    f"polynomial in {self.polynomial.nvars} variables at a base of length {len(self.base)}",
                    "OperatorExpr",
                )
        elif kind is NodeKind.COMPOSE:
            if arity < 2:
                raise MalformedInput("compose needs an outer and at least one inner expression", "OperatorExpr")
            outer = self.children[0]
            if outer.is_applied_polynomial and outer.polynomial.nvars != arity - 1:
                raise DimensionMismatch(
                    f"applied polynomial in {outer.polynomial.nvars} variables gets {arity - 1} arguments",
                    "OperatorExpr",
                )
        elif kind in _UNARY:
            if arity != 1:
                raise MalformedInput(f"{kind.value} takes exactly one argument, got {arity}", "OperatorExpr")
            if kind is NodeKind.PARTIAL and (self.axis is None or self.axis < 1):
                raise MalformedInput("partial needs an axis J >= 1", "OperatorExpr")
            if kind is NodeKind.DERAM and (self.ramification is None or self.ramification < 1):
                raise MalformedInput("deram needs an index M >= 1", "OperatorExpr")
        for child in self.children:
            if child.is_applied_polynomial and not (kind is NodeKind.COMPOSE and child is self.children[0]):
                raise MalformedInput("a polynomial without base point must be applied", "OperatorExpr")

    @property
    def is_applied_polynomial(self) -> bool:
        return self.kind in (NodeKind.POLY, NodeKind.GPOLY) and self.base is None

    def nodes(self) -> Iterator["OperatorExpr"]:
        """Every distinct node, children before parents"""
        seen = set()

        def visit(node: OperatorExpr) -> Iterator[OperatorExpr]:
            if id(node) in seen:
                return
            seen.add(id(node))
            for child in node.children:
                yield from visit(child)
            yield node

        yield from visit(self)

    def leaves(self) -> Dict[LeafKey, "OperatorExpr"]:
        """Input germ leaves keyed by (name, base)"""
        return {(n.name, n.base): n for n in self.nodes() if n.kind is NodeKind.GERM}

    def to_text(self) -> str:
        """Render back into the s-expression syntax"""
        k = self.kind
        if k is NodeKind.GERM:
            return f"(germ {self.name} {base_text(self.base)})"
        if k in (NodeKind.POLY, NodeKind.GPOLY):
            return f"({k.value} {self.polynomial.to_text()} {base_text(self.base)})"
        if k is NodeKind.COMPOSE and self.children[0].is_applied_polynomial:
            outer = self.children[0]
            names = ["y"] if outer.polynomial.nvars == 1 else [f"y{i + 1}" for i in range(outer.polynomial.nvars)]
            args = " ".join(c.to_text() for c in self.children[1:])
            return f"(poly-apply {outer.polynomial.to_text(names)} {args})"
        if k is NodeKind.PARTIAL:
            return f"(partial {self.axis} {self.children[0].to_text()})"
        if k is NodeKind.DERAM:
            return f"(deram {self.ramification} {self.children[0].to_text()})"
        return f"({k.value} {' '.join(c.to_text() for c in self.children)})"

    def __str__(self) -> str:
        return self.to_text()


def base_text(base: Point) -> str:
    if len(base) == 1:
        return str(base[0])
    return "[" + " ".join(str(a) for a in base) + "]"


# --- constructors ---

def germ(name: str, base) -> OperatorExpr:
    return OperatorExpr(NodeKind.GERM, name=name, base=make_point(base))


def poly(polynomial: Polynomial, base, gaussian: bool = False) -> OperatorExpr:
    kind = NodeKind.GPOLY if gaussian else NodeKind.POLY
    return OperatorExpr(kind, polynomial=polynomial, base=make_point(base))


def gpoly(polynomial: Polynomial, base) -> OperatorExpr:
    return poly(polynomial, base, gaussian=True)


def poly_apply(polynomial: Polynomial, *args: OperatorExpr) -> OperatorExpr:
    """P(e_1, …, e_n) for a Gaussian polynomial P in n variables"""
    outer = OperatorExpr(NodeKind.GPOLY, polynomial=polynomial)
    return OperatorExpr(NodeKind.COMPOSE, children=(outer,) + tuple(args))


def schwarz_of(e: OperatorExpr) -> OperatorExpr:
    return OperatorExpr(NodeKind.SCHWARZ, children=(e,))


def compose_of(outer: OperatorExpr, *inner: OperatorExpr) -> OperatorExpr:
    return OperatorExpr(NodeKind.COMPOSE, children=(outer,) + tuple(inner))


def partial_of(axis: int, e: OperatorExpr) -> OperatorExpr:
    return OperatorExpr(NodeKind.PARTIAL, children=(e,), axis=axis)


def implicit_of(e: OperatorExpr) -> OperatorExpr:
    return OperatorExpr(NodeKind.IMPLICIT, children=(e,))


def mdiv_of(e: OperatorExpr) -> OperatorExpr:
    return OperatorExpr(NodeKind.MDIV, children=(e,))


def deram_of(m: int, e: OperatorExpr) -> OperatorExpr:
    return OperatorExpr(NodeKind.DERAM, children=(e,), ramification=m)


# --- classification ---

@dataclass(frozen=True, slots=True)
class Classification:
    op_class: OperatorClass
    empty_definable: bool  # ∅-definable: no POLY node with arbitrary coefficients

    def __str__(self) -> str:
        suffix = " (∅-definable)" if self.empty_definable else ""
        return f"{self.op_class.value}{suffix}"


def classify(e: OperatorExpr) -> Classification:
    kinds = {n.kind for n in e.nodes()}
    if NodeKind.DERAM in kinds:
        op_class = OperatorClass.D
    elif NodeKind.MDIV in kinds:
        op_class = OperatorClass.C
    else:
        op_class = OperatorClass.B
    return Classification(op_class, NodeKind.POLY not in kinds)
