"""Command-line front end.

Jets, systems and reports are written as JSON on standard output; logs go
to standard error. Exit status: 0 on success, 1 on a domain error or a
failed check, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from germ_calculus import __version__
from germ_calculus.blowup.charts import Chart, blow_down_reconstruct, blow_up_jet
from germ_calculus.calculus.expr import classify
from germ_calculus.calculus.interpreter import apply_expr, certified_shift_lower_bound
from germ_calculus.calculus.parser import parse_expr
from germ_calculus.calculus.shift import shift_bound
from germ_calculus.errors import GermCalcError, MalformedInput
from germ_calculus.harness import serialization as io
from germ_calculus.harness.random_jets import generate_random_jet, random_environment
from germ_calculus.harness.runner import run_scenario
from germ_calculus.implicit.closures import (
    closure_compose,
    closure_derivative,
    closure_implicit,
    closure_schwarz,
    reduce_linear_relation,
)
from germ_calculus.implicit.systems import check_solution
from germ_calculus.models.gaussian import GaussianRational
from germ_calculus.models.jet import Jet
from germ_calculus.models.profile import PROFILE_PRESETS, default_order, load_profile

logger = logging.getLogger(__name__)

IMPLICIT_ACTIONS = ("check", "schwarz", "compose", "derivative", "implicit", "reduce")


# --- argument types ---

def _germ_binding(text: str) -> Tuple[str, str]:
    name, sep, path = text.partition("=")
    if not sep or not name or not path:
        raise argparse.ArgumentTypeError(f"expected NAME=FILE, got {text!r}")
    return name, path


def _chart(text: str) -> Chart:
    try:
        return Chart.of(text)
    except GermCalcError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _literal(text: str) -> GaussianRational:
    try:
        return GaussianRational.parse(text)
    except GermCalcError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _positive(text: str) -> int:
    value = _non_negative(text)
    if value == 0:
        raise argparse.ArgumentTypeError("expected a positive integer, got 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", "-v", action="store_true", help="Debug logging on standard error")
    common.add_argument("--format", choices=["json"], default=None, help="JSON instead of the human line of shift and classify")
    common.add_argument("--seed", type=_non_negative, default=0, help="Seed of random inputs")
    common.add_argument("--order", type=_non_negative, default=None, help="Truncation order (default: GERMCALC_ORDER or 16)")

    parser = argparse.ArgumentParser(prog="germcalc", description="Exact germ calculus on truncated Taylor jets over Q(i).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("apply", parents=[common], help="Evaluate an operator expression on input jets")
    p.add_argument("--expr", required=True, help="Operator expression")
    p.add_argument("--germ", type=_germ_binding, action="append", default=[], metavar="NAME=FILE")
    p.add_argument("--output", help="Write the jet here instead of standard output")

    p = sub.add_parser("shift", parents=[common], help="Structural and certified shift of an expression")
    p.add_argument("--expr", required=True)
    p.add_argument("--n", type=_non_negative, required=True, help="Output order")
    p.add_argument("--germ", type=_germ_binding, action="append", default=[], metavar="NAME=FILE",
                   help="Input jets (default: seeded random jets)")

    p = sub.add_parser("classify", parents=[common], help="Operator class and shift bound of an expression")
    p.add_argument("--expr", required=True)

    p = sub.add_parser("implicit", parents=[common], help="Check or transform an implicit system")
    p.add_argument("action", choices=IMPLICIT_ACTIONS)
    p.add_argument("files", nargs="+", metavar="FILE", help="Pair document(s); compose takes G then F")
    p.add_argument("--axis", type=int, default=1, help="Coordinate of the derivative (1-based)")
    p.add_argument("--output")

    p = sub.add_parser("blowup", parents=[common], help="Blow a jet at the origin of C² up in one chart")
    p.add_argument("file")
    p.add_argument("--chart", type=_chart, default=Chart(), help="λ literal or inf")
    p.add_argument("--output")

    p = sub.add_parser("blowdown", parents=[common], help="Reconstruct f from a chart jet of f ∘ π_λ")
    p.add_argument("file")
    p.add_argument("--chart", type=_chart, default=Chart())
    p.add_argument("--output")

    p = sub.add_parser("verify", parents=[common], help="Run a verification scenario (or all)")
    p.add_argument("scenario")
    p.add_argument("--preset", choices=sorted(PROFILE_PRESETS), default="Full")
    p.add_argument("--cases", type=_non_negative, default=None)
    p.add_argument("--degree", type=_non_negative, default=None)
    p.add_argument("--trials", type=_non_negative, default=None)
    p.add_argument("--workers", type=_non_negative, default=None)

    p = sub.add_parser("generate", parents=[common], help="Seeded random jet")
    p.add_argument("--dim", type=_positive, default=1)
    p.add_argument("--coeff-bound", type=_positive, default=9)
    p.add_argument("--base", type=_literal, nargs="*", default=None, help="Base point literals")
    p.add_argument("--output")
    return parser


# --- helpers ---

def _emit(document: object, output: Optional[str] = None) -> None:
    if output:
        io.write_document(output, document)
    else:
        sys.stdout.write(io.dumps(document))


def _environment(bindings: Sequence[Tuple[str, str]]) -> Dict[str, List[Jet]]:
    env: Dict[str, List[Jet]] = {}
    for name, path in bindings:
        env.setdefault(name, []).extend(io.load_jets(path))
    return env


def _single_jet(path: str) -> Jet:
    jets = io.load_jets(path)
    if len(jets) != 1:
        raise MalformedInput(f"{path} holds {len(jets)} jets, expected one", "cli")
    return jets[0]


# --- subcommands ---

def _cmd_apply(args: argparse.Namespace) -> int:
    e = parse_expr(args.expr)
    order = default_order() if args.order is None else args.order
    _emit(io.jet_to_dict(apply_expr(e, _environment(args.germ), order)), args.output)
    return 0


def _cmd_shift(args: argparse.Namespace) -> int:
    e = parse_expr(args.expr)
    env = _environment(args.germ) if args.germ else random_environment(e, args.n, args.seed)
    bound = shift_bound(e)
    upper = bound.evaluate(args.n)
    lower = certified_shift_lower_bound(e, env, args.n)
    if args.format == "json":
        _emit({"n": args.n, "upper": upper, "certified_lower": lower, "bound": bound.describe(), "N": bound.constant})
    else:
        print(f"upper: {upper}, certified lower: {lower}")
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    e = parse_expr(args.expr)
    c = classify(e)
    bound = shift_bound(e)
    if args.format == "json":
        _emit({
            "class": c.op_class.value,
            "empty_definable": c.empty_definable,
            "shift": bound.describe(),
            "N": bound.constant,
        })
    else:
        print(f"{c}, shift {bound.describe()}")
    return 0


def _cmd_implicit(args: argparse.Namespace) -> int:
    expected = 2 if args.action == "compose" else 1
    if len(args.files) != expected:
        raise MalformedInput(f"implicit {args.action} takes {expected} file(s), got {len(args.files)}", "cli")
    document = io.load_document(args.files[0])
    F, psi = io.pair_from_dict(document)
    if args.action == "check":
        result = check_solution(F, psi)
        _emit({
            "residual_zero": result.residual_zero,
            "jacobian_invertible": result.jacobian_invertible,
            "passed": result.passed,
        }, args.output)
        return 0 if result.passed else 1
    if args.action == "schwarz":
        pair = closure_schwarz(F, psi)
    elif args.action == "compose":
        inner = io.pair_from_dict(io.load_document(args.files[1]))
        pair = closure_compose(F, psi, *inner)
    elif args.action == "derivative":
        pair = closure_derivative(F, psi, args.axis)
    elif args.action == "implicit":
        pair = closure_implicit(F, psi)
    else:
        if "relation" not in document:
            raise MalformedInput("reduce needs a \"relation\" object in the pair document", "cli")
        pair = reduce_linear_relation(F, psi, io.relation_from_dict(document["relation"]))
    _emit(io.pair_to_dict(*pair), args.output)
    return 0


def _cmd_blowup(args: argparse.Namespace) -> int:
    f = _single_jet(args.file)
    _emit(io.jet_to_dict(blow_up_jet(f, args.chart, args.order)), args.output)
    return 0


def _cmd_blowdown(args: argparse.Namespace) -> int:
    g = _single_jet(args.file)
    _emit(io.jet_to_dict(blow_down_reconstruct(g, args.order, args.chart)), args.output)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    profile = load_profile(
        args.preset,
        order=args.order,
        seed=args.seed,
        cases=args.cases,
        degree=args.degree,
        trials=args.trials,
        workers=args.workers,
    )
    report = run_scenario(args.scenario, profile)
    _emit(report.to_dict())
    return 0 if report.passed else 1


def _cmd_generate(args: argparse.Namespace) -> int:
    order = default_order() if args.order is None else args.order
    f = generate_random_jet(args.dim, order, args.seed, args.coeff_bound, args.base or None)
    _emit(io.jet_to_dict(f), args.output)
    return 0


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "apply": _cmd_apply,
    "shift": _cmd_shift,
    "classify": _cmd_classify,
    "implicit": _cmd_implicit,
    "blowup": _cmd_blowup,
    "blowdown": _cmd_blowdown,
    "verify": _cmd_verify,
    "generate": _cmd_generate,
}


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse `argv`, run the subcommand and return the exit status"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except GermCalcError as e:
        print(f"error: {e.name}: {e}", file=sys.stderr)
        return 1
