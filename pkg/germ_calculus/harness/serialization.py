"""JSON documents for jets, implicit systems, solutions, charts and reports.

Rationals are written as "p/q" strings with q ≥ 1 always present, so a
written document re-serializes to the same bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from germ_calculus.blowup.charts import Chart
from germ_calculus.errors import MalformedInput
from germ_calculus.implicit.closures import LinearRelation
from germ_calculus.implicit.systems import ExpPolynomial, ImplicitSolution, ImplicitSystem
from germ_calculus.models.gaussian import ZERO, GaussianRational
from germ_calculus.models.jet import Jet
from germ_calculus.models.multi_index import degree
from germ_calculus.models.polynomial import Polynomial


def fraction_text(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: Any) -> Fraction:
    if not isinstance(text, str):
        raise MalformedInput(f"rational must be a string, got {text!r}", "serialization")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise MalformedInput(f"bad rational {text!r}", "serialization") from e


def scalar_to_dict(c: GaussianRational) -> Dict[str, str]:
    return {"re": fraction_text(c.re), "im": fraction_text(c.im)}


def scalar_from_dict(data: Dict[str, Any]) -> GaussianRational:
    try:
        return GaussianRational(parse_fraction(data["re"]), parse_fraction(data.get("im", "0")))
    except (KeyError, TypeError, AttributeError) as e:
        raise MalformedInput(f"bad coefficient {data!r}", "serialization") from e


def _require(data: Dict[str, Any], *keys: str) -> None:
    if not isinstance(data, dict):
        raise MalformedInput(f"expected a JSON object, got {type(data).__name__}", "serialization")
    missing = [k for k in keys if k not in data]
    if missing:
        raise MalformedInput(f"missing field(s) {', '.join(missing)}", "serialization")


# --- jets ---

def jet_to_dict(f: Jet) -> Dict[str, Any]:
    coeffs = sorted(f.coeffs.items(), key=lambda kv: (degree(kv[0]), tuple(-e for e in kv[0])))
    return {
        "dim": f.dim,
        "order": f.order,
        "base": [[fraction_text(a.re), fraction_text(a.im)] for a in f.base],
        "coeffs": [{"alpha": list(alpha), **scalar_to_dict(c)} for alpha, c in coeffs],
    }


def jet_from_dict(data: Dict[str, Any]) -> Jet:
    _require(data, "dim", "order", "base", "coeffs")
    try:
        base = tuple(GaussianRational(parse_fraction(re), parse_fraction(im)) for re, im in data["base"])
        coeffs = {tuple(int(e) for e in entry["alpha"]): scalar_from_dict(entry) for entry in data["coeffs"]}
        return Jet(int(data["dim"]), int(data["order"]), base, coeffs)
    except (KeyError, TypeError, ValueError) as e:
        raise MalformedInput(f"malformed jet document: {e}", "serialization") from e


# --- implicit systems ---

def exp_polynomial_to_list(p: ExpPolynomial) -> List[Dict[str, Any]]:
    return [
        {"xexp": list(xe), "yexp": list(ye), "coeff": scalar_to_dict(c)}
        for xe, ye, c in p.monomials()
    ]


def exp_polynomial_from_list(nvars: int, monomials: List[Dict[str, Any]]) -> ExpPolynomial:
    terms: Dict[Tuple[int, ...], GaussianRational] = {}
    for m in monomials:
        _require(m, "xexp", "yexp", "coeff")
        if len(m["xexp"]) != nvars or len(m["yexp"]) != nvars:
            raise MalformedInput(f"monomial {m!r} does not have {nvars} exponents per group", "serialization")
        key = tuple(int(e) for e in m["xexp"]) + tuple(int(e) for e in m["yexp"])
        terms[key] = terms.get(key, ZERO) + scalar_from_dict(m["coeff"])
    return ExpPolynomial(nvars, Polynomial(2 * nvars, terms))


def system_to_dict(F: ImplicitSystem) -> Dict[str, Any]:
    out: Dict[str, Any] = {"size": F.size, "vars": F.nvars}
    if F.coords != 1:
        out["coords"] = F.coords
    out["components"] = [exp_polynomial_to_list(p) for p in F.components]
    return out


def system_from_dict(data: Dict[str, Any]) -> ImplicitSystem:
    _require(data, "size", "vars", "components")
    coords = int(data.get("coords", 1))
    size, nvars = int(data["size"]), int(data["vars"])
    if nvars != coords + size or len(data["components"]) != size:
        raise MalformedInput(
            f"system of size {size} over {nvars} variables with {coords} coordinate(s) "
            f"and {len(data['components'])} component(s)",
            "serialization",
        )
    return ImplicitSystem(tuple(exp_polynomial_from_list(nvars, c) for c in data["components"]), coords)


def solution_to_dict(psi: ImplicitSolution) -> Dict[str, Any]:
    out: Dict[str, Any] = {}
    if psi.coords != 1:
        out["coords"] = psi.coords
    out["jets"] = [jet_to_dict(j) for j in psi.jets]
    return out


def solution_from_dict(data: Dict[str, Any]) -> ImplicitSolution:
    _require(data, "jets")
    return ImplicitSolution(tuple(jet_from_dict(j) for j in data["jets"]), int(data.get("coords", 1)))


def pair_to_dict(F: ImplicitSystem, psi: ImplicitSolution) -> Dict[str, Any]:
    return {"system": system_to_dict(F), "solution": solution_to_dict(psi)}


def pair_from_dict(data: Dict[str, Any]) -> Tuple[ImplicitSystem, ImplicitSolution]:
    _require(data, "system", "solution")
    return system_from_dict(data["system"]), solution_from_dict(data["solution"])


def relation_from_dict(data: Dict[str, Any]) -> LinearRelation:
    _require(data, "d", "coefficients")
    offset = GaussianRational.parse(data["offset"]) if "offset" in data else ZERO
    return LinearRelation(int(data["d"]), tuple(int(a) for a in data["coefficients"]), offset)


# --- charts ---

def chart_to_dict(chart: Chart) -> Dict[str, str]:
    return {"lambda": chart.label}


def chart_from_dict(data: Dict[str, Any]) -> Chart:
    _require(data, "lambda")
    return Chart.of(str(data["lambda"]))


# --- files ---

def dumps(document: Any) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def load_document(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise MalformedInput(f"cannot read {path}: {e.strerror}", "serialization") from e
    except json.JSONDecodeError as e:
        raise MalformedInput(f"{path} is not valid JSON: {e.msg} at line {e.lineno}", "serialization") from e


def load_jets(path: str) -> List[Jet]:
    """A jet document or a JSON list of jet documents"""
    data = load_document(path)
    if isinstance(data, list):
        return [jet_from_dict(d) for d in data]
    return [jet_from_dict(data)]


def write_document(path: str, document: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(document))
