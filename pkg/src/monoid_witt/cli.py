"""Batch command-line front end.

Exit codes: 0 success, 1 domain error (e.g. not invertible), 2 usage or
parse error.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import HomomorphismError, NotDivisibleError, NotInvertibleError, ParseError
from .idempotent import compute_idempotent, splitting_check
from .literals import parse_coefficient, parse_element, parse_ring
from .selftest import run_selftest
from .truncated import (
    divide_by_p, from_digits, invert, reduce, teichmuller_expand, valuation)
from .witt import WittRing, alpha2, alpha_n


class UsageError(Exception):
    pass


def _emit(args, text, doc):
    if args.output == "structured":
        print(json.dumps(doc, sort_keys=False))
    else:
        print(text)


def _base_doc(args, ctx, precision):
    return {"ring": ctx.spec, "precision": precision}


def _truncated_doc(args, x, extra=None):
    doc = _base_doc(args, x.ctx, x.precision)
    doc["coeffs"] = x.labelled_coeffs()
    doc.update(extra or {})
    doc["status"] = "ok"
    return doc


def _read_elements(args, ctx, count):
    sources = list(args.elements)
    if len(sources) != count:
        raise UsageError(f"{args.command} expects {count} element(s), got {len(sources)}")
    stdin_lines = None
    out = []
    for src in sources:
        if src == "-":
            if stdin_lines is None:
                stdin_lines = [ln for ln in sys.stdin.read().splitlines() if ln.strip()]
            if not stdin_lines:
                raise UsageError("stdin exhausted while reading elements")
            src = stdin_lines.pop(0)
        out.append(parse_element(src, ctx))
    return out


def _precision(args):
    if args.prec is None:
        raise UsageError("--prec is required")
    if args.prec < 0:
        raise UsageError("--prec must be >= 0")
    return args.prec


def cmd_reduce(args, ctx):
    (x,) = _read_elements(args, ctx, 1)
    r = reduce(x, _precision(args))
    _emit(args, str(r), _truncated_doc(args, r))


def _binary(args, ctx, op):
    n = _precision(args)
    x, y = (reduce(e, n) for e in _read_elements(args, ctx, 2))
    r = op(x, y)
    _emit(args, str(r), _truncated_doc(args, r))


def cmd_add(args, ctx):
    _binary(args, ctx, lambda x, y: x + y)


def cmd_mul(args, ctx):
    _binary(args, ctx, lambda x, y: x * y)


def cmd_invert(args, ctx):
    (x,) = _read_elements(args, ctx, 1)
    r = invert(reduce(x, _precision(args)))
    _emit(args, str(r), _truncated_doc(args, r))


def _digits_text(digits):
    return "(" + ", ".join(str(d) for d in digits) + ")"


def cmd_teich_expand(args, ctx):
    (x,) = _read_elements(args, ctx, 1)
    digits = teichmuller_expand(reduce(x, _precision(args)))
    doc = _base_doc(args, ctx, args.prec)
    doc.update(digits=[str(d) for d in digits], status="ok")
    _emit(args, _digits_text(digits), doc)


def cmd_from_digits(args, ctx):
    if args.digits is None:
        raise UsageError("from-digits needs --digits r0,r1,...")
    parts = [s for s in args.digits.split(",")] if args.digits.strip() else []
    digits = [parse_coefficient(s, ctx) for s in parts]
    if args.prec is not None and args.prec != len(digits):
        raise UsageError(f"--prec {args.prec} does not match {len(digits)} digits")
    r = from_digits(digits, ctx)
    _emit(args, str(r), _truncated_doc(args, r))


def cmd_divide_p(args, ctx):
    n = _precision(args)
    if n < 1:
        raise UsageError("divide-p needs --prec >= 1")
    (z,) = _read_elements(args, ctx, 1)
    r = divide_by_p(z, n)
    _emit(args, str(r), _truncated_doc(args, r))


def cmd_valuation(args, ctx):
    n = _precision(args)
    (x,) = _read_elements(args, ctx, 1)
    v = valuation(reduce(x, n))
    doc = _base_doc(args, ctx, n)
    doc.update(valuation=v, status="ok")
    _emit(args, str(v) if v is not None else f">= {n}", doc)


def cmd_witt_compare(args, ctx):
    n = _precision(args)
    if n < 1:
        raise UsageError("witt-compare needs --prec >= 1")
    x, y = (reduce(e, n) for e in _read_elements(args, ctx, 2))
    ring = WittRing(ctx, n)
    ax, ay = alpha_n(x, ring), alpha_n(y, ring)
    a_sum, a_prod = alpha_n(x + y, ring), alpha_n(x * y, ring)
    sum_ok = a_sum == ax + ay
    prod_ok = a_prod == ax * ay
    checks = {"sum": sum_ok, "product": prod_ok}
    lines = [
        f"alpha(x) = {ax}",
        f"alpha(y) = {ay}",
        f"alpha(x+y) = {a_sum}; alpha(x)+alpha(y) = {ax + ay}: {'agree' if sum_ok else 'DIFFER'}",
        f"alpha(x*y) = {a_prod}; alpha(x)*alpha(y) = {ax * ay}: {'agree' if prod_ok else 'DIFFER'}",
    ]
    if n == 2:
        a2_ok = alpha2(x) == ax and alpha2(y) == ay
        checks["alpha2"] = a2_ok
        lines.append(f"(pi, delta) matches alpha: {'agree' if a2_ok else 'DIFFER'}")
    ok = all(checks.values())
    doc = _base_doc(args, ctx, n)
    doc.update(witt={"x": str(ax), "y": str(ay), "sum": str(a_sum), "product": str(a_prod)},
               checks=checks, status="agree" if ok else "disagree")
    _emit(args, "\n".join(lines), doc)
    return 0 if ok else 1


def cmd_idempotent(args, ctx):
    n = _precision(args)
    if n < 1:
        raise UsageError("idempotent needs --prec >= 1")
    report = splitting_check(compute_idempotent(ctx, n), n)
    doc = report.to_dict()
    _emit(args, report.idempotent, doc)
    if not report.ok:
        print(f"splitting check failed for {ctx.spec} at precision {n}", file=sys.stderr)
        return 1
    return 0


def cmd_selftest(args, ctx):
    results = run_selftest()
    ok = all(r.passed for r in results)
    doc = {"checks": [{"name": r.name, "passed": r.passed, "finding": r.finding,
                       "detail": r.detail} for r in results],
           "status": "ok" if ok else "failure"}
    _emit(args, "\n".join(r.line() for r in results), doc)
    return 0 if ok else 1


COMMANDS = {
    "reduce": (cmd_reduce, 1),
    "add": (cmd_add, 2),
    "mul": (cmd_mul, 2),
    "invert": (cmd_invert, 1),
    "teich-expand": (cmd_teich_expand, 1),
    "from-digits": (cmd_from_digits, 0),
    "divide-p": (cmd_divide_p, 1),
    "valuation": (cmd_valuation, 1),
    "witt-compare": (cmd_witt_compare, 2),
    "idempotent": (cmd_idempotent, 0),
    "selftest": (cmd_selftest, 0),
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="monoid-witt",
        description="Exact arithmetic in ZR/I^n for perfect F_p-algebras R.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, arity) in COMMANDS.items():
        sp = sub.add_parser(name)
        if name != "selftest":
            sp.add_argument("--ring", required=True,
                            help="gf(p), gf(q,modulus) or perfect(p;t,...)")
            sp.add_argument("--prec", type=int, help="precision n (work modulo I^n)")
        if name == "from-digits":
            sp.add_argument("--digits", help="comma-separated Teichmuller digits")
        sp.add_argument("--output", choices=("text", "structured"), default="text")
        if arity:
            sp.add_argument("elements", nargs=arity, metavar="ELEMENT",
                            help="ZR literal, or '-' to read a line from stdin")
        else:
            sp.set_defaults(elements=[])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler, _ = COMMANDS[args.command]
    try:
        ctx = parse_ring(args.ring) if args.command != "selftest" else None
        code = handler(args, ctx)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NotInvertibleError, NotDivisibleError, HomomorphismError,
            ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
