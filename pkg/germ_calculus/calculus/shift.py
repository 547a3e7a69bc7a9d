"""Structural shift bounds of operator expressions.

Each elementary operator maps a requested output order n to the input order
it consumes: n for schwarz/compose/implicit/polynomials, n + 1 for partial
derivatives and monomial division, m·n for m-th deramification. Along every
root-to-leaf path these atoms compose to an affine map n ↦ a·n + b; the
bound of the expression is the maximum over all paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Tuple

from germ_calculus.calculus.expr import LeafKey, NodeKind, OperatorExpr

Affine = Tuple[int, int]  # (a, b) for n ↦ a·n + b


def _prune(maps: FrozenSet[Affine]) -> FrozenSet[Affine]:
    """Drop maps dominated coefficientwise by another map"""
    return frozenset(
        (a, b) for a, b in maps
        if not any((c, d) != (a, b) and c >= a and d >= b for c, d in maps)
    )


@dataclass(frozen=True, slots=True)
class ShiftBound:
    """Upper bound n ↦ max over leaves and paths of a·n + b"""
    paths: Dict[LeafKey, FrozenSet[Affine]]
    has_deram: bool

    def evaluate(self, n: int) -> int:
        """Input order sufficient to certify output order n (0 without inputs)"""
        return max((a * n + b for maps in self.paths.values() for a, b in maps), default=0)

    __call__ = evaluate

    def required_orders(self, n: int) -> Dict[LeafKey, int]:
        """Input order needed at each leaf for output order n"""
        return {leaf: max(a * n + b for a, b in maps) for leaf, maps in self.paths.items()}

    @property
    def constant(self) -> Optional[int]:
        """N with bound(n) ≤ n + N, for expressions without deramification"""
        if self.has_deram:
            return None
        return max((b for maps in self.paths.values() for _, b in maps), default=0)

    def describe(self) -> str:
        maps = _prune(frozenset(m for maps in self.paths.values() for m in maps))
        if not maps:
            return "0"
        terms = []
        for a, b in sorted(maps, reverse=True):
            text = "n" if a == 1 else f"{a}n"
            if b:
                text += f"+{b}"
            terms.append(text)
        return terms[0] if len(terms) == 1 else f"max({', '.join(terms)})"

    def __str__(self) -> str:
        return self.describe()


def _atom(node: OperatorExpr, outer: Affine) -> Affine:
    """Map for the children of `node`, given the map reaching `node`"""
    a, b = outer
    if node.kind in (NodeKind.PARTIAL, NodeKind.MDIV):
        return a, b + 1
    if node.kind is NodeKind.DERAM:
        m = node.ramification
        return m * a, m * b
    return a, b


def shift_bound(e: OperatorExpr) -> ShiftBound:
    """Structural shift bound of the given representation"""
    paths: Dict[LeafKey, set] = {}
    seen: set = set()
    stack = [(e, (1, 0))]
    while stack:
        node, reach = stack.pop()
        key = (id(node), reach)
        if key in seen:
            continue
        seen.add(key)
        if node.kind is NodeKind.GERM:
            paths.setdefault((node.name, node.base), set()).add(reach)
            continue
        below = _atom(node, reach)
        for child in node.children:
            stack.append((child, below))
    has_deram = any(n.kind is NodeKind.DERAM for n in e.nodes())
    return ShiftBound({k: _prune(frozenset(v)) for k, v in paths.items()}, has_deram)
