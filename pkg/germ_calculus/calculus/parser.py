"""S-expression reader for operator expressions and polynomial specs

Grammar:

    EXPR     := (germ NAME BASE) | (poly POLYSPEC BASE) | (gpoly POLYSPEC BASE)
              | (poly-apply POLYSPEC EXPR+) | (schwarz EXPR)
              | (compose EXPR EXPR+) | (partial J EXPR) | (implicit EXPR)
              | (mdiv EXPR) | (deram M EXPR)
    BASE     := LITERAL | [LITERAL*]
    POLYSPEC := LITERAL | VAR | (+ POLYSPEC*) | (- POLYSPEC+) | (* POLYSPEC*) | (^ POLYSPEC N)
    VAR      := z | y | zK | yK          (z, y and z1, y1 all name the first variable)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Union

from germ_calculus.calculus.expr import (
    OperatorExpr,
    compose_of,
    deram_of,
    germ,
    implicit_of,
    mdiv_of,
    partial_of,
    poly,
    poly_apply,
    schwarz_of,
)
from germ_calculus.errors import GermCalcError, ParseError
from germ_calculus.models.gaussian import GaussianRational
from germ_calculus.models.jet import Point
from germ_calculus.models.polynomial import Polynomial

_VARIABLE = re.compile(r"^[zy](\d*)$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_.'-]*$")


@dataclass(slots=True)
class Atom:
    text: str
    position: int


@dataclass(slots=True)
class Group:
    items: List["Node"]
    position: int
    bracket: bool = False  # True for [ ... ]


Node = Union[Atom, Group]


def _tokenize(text: str) -> List[Atom]:
    tokens: List[Atom] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace() or ch == ",":
            i += 1
        elif ch in "()[]":
            tokens.append(Atom(ch, i))
            i += 1
        else:
            start = i
            while i < n and not text[i].isspace() and text[i] not in "()[],":
                i += 1
            tokens.append(Atom(text[start:i], start))
    return tokens


def _read(text: str) -> Node:
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression", 0)
    pos = 0

    def read_node() -> Node:
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of input", len(text))
        tok = tokens[pos]
        pos += 1
        if tok.text in ")]":
            raise ParseError(f"unexpected '{tok.text}'", tok.position)
        if tok.text in "([":
            closer = ")" if tok.text == "(" else "]"
            items: List[Node] = []
            while True:
                if pos >= len(tokens):
                    raise ParseError(f"missing '{closer}'", len(text))
                if tokens[pos].text == closer:
                    pos += 1
                    return Group(items, tok.position, bracket=tok.text == "[")
                if tokens[pos].text in ")]":
                    raise ParseError(f"expected '{closer}'", tokens[pos].position)
                items.append(read_node())
        return tok

    node = read_node()
    if pos != len(tokens):
        raise ParseError("trailing input after expression", tokens[pos].position)
    return node


def _position(node: Node) -> int:
    return node.position


def _literal(atom: Node) -> GaussianRational:
    if not isinstance(atom, Atom):
        raise ParseError("expected a rational literal", _position(atom))
    try:
        return GaussianRational.parse(atom.text)
    except GermCalcError:
        raise ParseError(f"malformed rational literal {atom.text!r}", atom.position) from None


def _integer(atom: Node, what: str) -> int:
    if isinstance(atom, Atom) and re.fullmatch(r"\d+", atom.text):
        return int(atom.text)
    raise ParseError(f"expected a non-negative integer {what}", _position(atom))


def _join_imaginary_units(items: List[Node]) -> List[Node]:
    """Glue a spaced "i" onto a literal with a sign inside it: "1/2+1/3 i" is one coordinate"""
    out: List[Node] = []
    for item in items:
        prev = out[-1] if out else None
        if (
            isinstance(item, Atom)
            and item.text in ("i", "*i")
            and isinstance(prev, Atom)
            and not prev.text.endswith("i")
            and re.search(r".[+-]", prev.text)
        ):
            out[-1] = Atom(prev.text + "i", prev.position)
        else:
            out.append(item)
    return out


def _base(node: Node) -> Point:
    if isinstance(node, Group):
        if not node.bracket:
            raise ParseError("base point must be a literal or a [ ... ] list", node.position)
        if not node.items:
            raise ParseError("empty base point", node.position)
        return tuple(_literal(item) for item in _join_imaginary_units(node.items))
    return (_literal(node),)


def _polynomial(node: Node, nvars: int) -> Polynomial:
    if isinstance(node, Atom):
        m = _VARIABLE.match(node.text)
        if m:
            index = int(m.group(1)) if m.group(1) else 1
            if not 1 <= index <= nvars:
                raise ParseError(f"variable {node.text} outside 1..{nvars}", node.position)
            return Polynomial.variable(nvars, index - 1)
        return Polynomial.constant(nvars, _literal(node))
    if node.bracket or not node.items:
        raise ParseError("malformed polynomial", node.position)
    head = node.items[0]
    if not isinstance(head, Atom) or head.text not in ("+", "-", "*", "^"):
        raise ParseError("polynomial operator must be one of + - * ^", _position(head))
    args = node.items[1:]
    if head.text == "^":
        if len(args) != 2:
            raise ParseError("^ takes a base and an exponent", head.position)
        return _polynomial(args[0], nvars) ** _integer(args[1], "exponent")
    parts = [_polynomial(a, nvars) for a in args]
    if head.text == "+":
        result = Polynomial(nvars)
        for p in parts:
            result = result + p
        return result
    if head.text == "*":
        result = Polynomial.constant(nvars, 1)
        for p in parts:
            result = result * p
        return result
    if not parts:
        raise ParseError("- needs at least one argument", head.position)
    if len(parts) == 1:
        return -parts[0]
    result = parts[0]
    for p in parts[1:]:
        result = result - p
    return result


def parse_polynomial(text: str, nvars: int) -> Polynomial:
    """Parse a POLYSPEC in `nvars` variables"""
    return _polynomial(_read(text), nvars)


def _expr(node: Node) -> OperatorExpr:
    if isinstance(node, Atom) or node.bracket or not node.items:
        raise ParseError("expected a parenthesized expression", _position(node))
    head = node.items[0]
    if not isinstance(head, Atom):
        raise ParseError("expression head must be a word", _position(head))
    args = node.items[1:]
    word = head.text

    def arity(expected: int) -> None:
        if len(args) != expected:
            raise ParseError(f"{word} takes {expected} arguments, got {len(args)}", head.position)

    if word == "germ":
        arity(2)
        if not isinstance(args[0], Atom) or not _NAME.match(args[0].text):
            raise ParseError("germ needs a NAME", _position(args[0]))
        return germ(args[0].text, _base(args[1]))
    if word in ("poly", "gpoly"):
        arity(2)
        base = _base(args[1])
        return poly(_polynomial(args[0], len(base)), base, gaussian=word == "gpoly")
    if word == "poly-apply":
        if len(args) < 2:
            raise ParseError("poly-apply takes a polynomial and at least one expression", head.position)
        inner = [_expr(a) for a in args[1:]]
        return poly_apply(_polynomial(args[0], len(inner)), *inner)
    if word == "schwarz":
        arity(1)
        return schwarz_of(_expr(args[0]))
    if word == "compose":
        if len(args) < 2:
            raise ParseError("compose takes an outer and at least one inner expression", head.position)
        return compose_of(*[_expr(a) for a in args])
    if word == "partial":
        arity(2)
        axis = _integer(args[0], "axis")
        if axis < 1:
            raise ParseError("partial axis starts at 1", _position(args[0]))
        return partial_of(axis, _expr(args[1]))
    if word == "implicit":
        arity(1)
        return implicit_of(_expr(args[0]))
    if word == "mdiv":
        arity(1)
        return mdiv_of(_expr(args[0]))
    if word == "deram":
        arity(2)
        m = _integer(args[0], "ramification index")
        if m < 1:
            raise ParseError("ramification index starts at 1", _position(args[0]))
        return deram_of(m, _expr(args[1]))
    raise ParseError(f"unknown head {word!r}", head.position)


def parse_expr(text: str) -> OperatorExpr:
    """Parse an operator expression; errors carry the character position"""
    try:
        return _expr(_read(text))
    except ParseError:
        raise
    except GermCalcError as e:
        raise ParseError(str(e), 0) from e

