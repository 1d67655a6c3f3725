"""Command-line frontend.

Subcommands: expand, verify, eval, groebner, discover, enumerate,
maxwell, selftest.  Reports are deterministic key/value text; --json
emits the same fields machine-readably.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from fractions import Fraction

from . import expr as expr_mod
from . import prover
from .derivcalc import enumerate_specs
from .errors import DegenerateCoordinates, ThermoError, UsageError
from .models import (
    StatePoint,
    check_jacobian,
    eval_quantity,
    ideal_gas,
    oracle_second,
    oracle_triple,
    synthesis,
    van_der_waals,
)
from .polyalg import LEX, GRLEX, parse_relation_file
from .prover import Identity


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="thermoident",
        description="Exact calculus of thermodynamic partial-derivative identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="expand an expression over the primitives")
    p.add_argument("expression")
    p.add_argument("--reduce", action="store_true",
                   help="also reduce modulo the constraint ideal")

    p = sub.add_parser("verify", help="verify identities (inline or from a file)")
    p.add_argument("identity", nargs="?", help='inline identity "LHS = RHS"')
    p.add_argument("--file", help="identity file: one LHS = RHS per line, # comments")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("eval", help="evaluate an expression on a gas model")
    p.add_argument("expression")
    p.add_argument("--model", choices=("ideal", "vdw", "synthesis"), default="ideal")
    p.add_argument("--gamma", default="5/3", help="adiabatic exponent (fraction ok)")
    p.add_argument("--a", default="0", help="van der Waals / synthesis parameter a")
    p.add_argument("--b", default="0", help="van der Waals / synthesis parameter b")
    p.add_argument("--gamma-coeffs", default=None,
                   help="synthesis gamma(w) polynomial coefficients, e.g. '1.4,0.01'")
    p.add_argument("--at", required=True, help="state as 'x,y'")

    p = sub.add_parser("groebner", help="Groebner basis of a relation file")
    p.add_argument("--file", required=True,
                   help="relation file with a 'vars: ...' header")
    p.add_argument("--order", choices=("lex", "grlex"), default="lex")

    p = sub.add_parser("discover", help="run the built-in identity discovery system")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("enumerate", help="count or stream derivative specs")
    p.add_argument("kind", choices=("triples", "jacobians", "seconds"))
    p.add_argument("--limit", type=int, default=0,
                   help="print the first N specs instead of just the count")

    p = sub.add_parser("maxwell", help="verify the four Maxwell relations")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("selftest", help="numeric-vs-symbolic consistency sweep")
    p.add_argument("--seconds-sample", type=int, default=60,
                   help="number of random second derivatives to cross-check")

    return parser


def _parse_state(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"state must be 'x,y', got {text!r}")
    try:
        return StatePoint(float(Fraction(parts[0])), float(Fraction(parts[1])))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse state {text!r}") from None


def _make_model(args):
    if args.model == "ideal":
        return ideal_gas(Fraction(args.gamma))
    if args.model == "vdw":
        return van_der_waals(Fraction(args.a), Fraction(args.b), Fraction(args.gamma))
    coeffs = args.gamma_coeffs
    if coeffs is None:
        coeffs = args.gamma
    return synthesis(
        tuple(float(Fraction(c)) for c in coeffs.split(",")),
        Fraction(args.a),
        Fraction(args.b),
    )


def _cmd_expand(args, out):
    e = expr_mod.parse(args.expression)
    r = expr_mod.to_rational(e)
    if args.reduce:
        r = prover.default_constraints().reduce_rational(r)
    print(r.render(), file=out)
    return 0


def _cmd_verify(args, out):
    identities = []
    if args.file:
        with open(args.file) as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if line:
                    identities.append(Identity.parse(line, label=f"line {lineno}"))
    if args.identity:
        identities.append(Identity.parse(args.identity))
    if not identities:
        raise UsageError("verify needs an inline identity or --file")

    reports = [prover.verify(ident) for ident in identities]
    if args.json:
        print(json.dumps([r.as_dict() for r in reports], indent=2), file=out)
    else:
        for i, rep in enumerate(reports):
            if i:
                print(file=out)
            print(rep.as_text(), file=out)
    return 0 if all(r.proved for r in reports) else 1


def _cmd_eval(args, out):
    model = _make_model(args)
    state = _parse_state(args.at)
    value = eval_quantity(model, args.expression, state)
    print(format(value, ".12g"), file=out)
    return 0


def _cmd_groebner(args, out):
    with open(args.file) as fh:
        varset, relations = parse_relation_file(fh.read())
    if not relations:
        raise UsageError("relation file contains no relations")
    order = LEX if args.order == "lex" else GRLEX
    basis = prover.discover(relations, varset, order)
    for g in basis:
        print(g.render(order), file=out)
    return 0

def _cmd_discover(args, out):
    basis = prover.discover()
    ok, forward, backward = prover.cross_check_discovery(basis)
    if args.json:
        print(
            json.dumps(
                {
                    "basis": [g.render(basis.order) for g in basis],
                    "reference_check": {
                        "ok": ok,
                        "reference_failures": forward,
                        "basis_failures": backward,
                    },
                },
                indent=2,
            ),
            file=out,
        )
    else:
        for g in basis:
            print(g.render(basis.order), file=out)
        print(f"# basis size: {len(basis)}", file=out)
        print(
            "# reference cross-check: "
            f"{forward} reference failures, {backward} basis failures",
            file=out,
        )
    return 0 if ok else 1


def _cmd_enumerate(args, out):
    stream = enumerate_specs(args.kind)
    if args.limit:
        for spec in itertools.islice(stream, args.limit):
            print(spec, file=out)
    print(f"{args.kind}: {stream.count}", file=out)
    return 0


def _cmd_maxwell(args, out):
    reports = [prover.verify(ident) for ident in prover.maxwell_relations()]
    if args.json:
        print(json.dumps([r.as_dict() for r in reports], indent=2), file=out)
    else:
        for rep in reports:
            flag = "proved" if rep.proved else rep.status
            print(f"{rep.identity.rendered():28s} {flag}  "
                  f"[{rep.identity.label}]", file=out)
        n = sum(r.proved for r in reports)
        print(f"{n}/4 proved", file=out)
    return 0 if all(r.proved for r in reports) else 1


def _cmd_selftest(args, out):
    failures = 0

    def report(name, ok, detail=""):
        nonlocal failures
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}{': ' + detail if detail else ''}",
              file=out)

    model = ideal_gas(Fraction(5, 3))
    state = StatePoint(2.0, 3.0)

    reports = [prover.verify(ident) for ident in prover.maxwell_relations()]
    report("maxwell relations", all(r.proved for r in reports),
           f"{sum(r.proved for r in reports)}/4 proved")

    for m, tol in (
        (model, 1e-9),
        (van_der_waals(1.0, 0.5, 1.4), 1e-9),
        (synthesis((1.4, 0.01)), 1e-6),
    ):
        rep = check_jacobian(m, tol=tol)
        report(f"jacobian identity on {m!r}", rep.passed,
               f"max deviation {rep.max_deviation:.2e}")

    # On the ideal gas, enthalpy and energy depend on temperature alone, so
    # pairs drawn from {T, W, E} are degenerate coordinates; the symbolic and
    # numeric routes must then agree by both raising DegenerateCoordinates.
    worst = 0.0
    degenerate = 0
    mismatched = 0
    for t in enumerate_specs("triples"):
        try:
            sym = eval_quantity(model, t, state)
            sym_ok = True
        except DegenerateCoordinates:
            sym_ok = False
        try:
            orc = oracle_triple(model, t, state)
            orc_ok = True
        except DegenerateCoordinates:
            orc_ok = False
        if sym_ok != orc_ok:
            mismatched += 1
        elif not sym_ok:
            degenerate += 1
        else:
            worst = max(worst, abs(sym - orc) / (1.0 + abs(sym)))
    report(
        "all 336 triples vs finite differences",
        worst <= 1e-5 and mismatched == 0,
        f"worst relative deviation {worst:.2e}, "
        f"{degenerate} consistently degenerate",
    )

    rng = random.Random(20260810)
    seconds = list(enumerate_specs("seconds"))
    worst = 0.0
    checked = 0
    for sd in rng.sample(seconds, args.seconds_sample):
        try:
            sym = eval_quantity(model, sd, state)
            orc = oracle_second(model, sd, state)
        except DegenerateCoordinates:
            continue
        worst = max(worst, abs(sym - orc) / (1.0 + abs(sym)))
        checked += 1
    report(f"{checked} random second derivatives vs finite differences",
           worst <= 1e-4, f"worst relative deviation {worst:.2e}")

    print(f"{'OK' if not failures else 'FAILED'}", file=out)
    return 0 if not failures else 1


_COMMANDS = {
    "expand": _cmd_expand,
    "verify": _cmd_verify,
    "eval": _cmd_eval,
    "groebner": _cmd_groebner,
    "discover": _cmd_discover,
    "enumerate": _cmd_enumerate,
    "maxwell": _cmd_maxwell,
    "selftest": _cmd_selftest,
}


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args, sys.stdout)
    except ThermoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
