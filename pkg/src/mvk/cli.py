"""``mvk`` command line: eval, series, verify and table."""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import checks
from .constants import PrecisionContext
from .errors import BudgetExceeded, DivergentIndex, OrderExceeded, ParseError, UnknownName
from .nested_sums import DEFAULT_BUDGET
from .parsing import parse_expr, parse_value
from .series import SERIES_NAMES, series_build
from .symbolic import canonicalize, num_eval

EXIT_OK, EXIT_FAIL, EXIT_DIVERGENT, EXIT_BUDGET = 0, 1, 2, 3


def _ctx(args) -> PrecisionContext:
    if args.prec_bits is not None:
        return PrecisionContext(args.prec_bits)
    return PrecisionContext.from_env()


def _nstr(mp, x, digits):
    if isinstance(x, mp.mpc) and x.imag == 0:
        x = x.real
    return mp.nstr(x, digits)


def cmd_eval(args) -> int:
    ctx = _ctx(args)
    try:
        spec = parse_value(args.spec)
        report = spec.evaluate(ctx, args.budget, args.method)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGENT
    except DivergentIndex as exc:
        print(f"divergent: {exc}", file=sys.stderr)
        return EXIT_DIVERGENT
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    mp = ctx.mp
    print(f"{spec} = {_nstr(mp, report.value, args.digits)}")
    print(f"error estimate {mp.nstr(report.error_estimate, 3)} ({report.method}, {report.terms_used} terms)")
    return EXIT_OK


def cmd_series(args) -> int:
    try:
        s = series_build(args.name, args.order)
    except UnknownName as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_DIVERGENT
    except OrderExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGENT
    ctx = _ctx(args)
    for n, c in s.rows():
        if c.is_zero() and not args.all:
            continue
        print(f"{n}\t{c}\t{_nstr(ctx.mp, num_eval(c, ctx).value, args.digits)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    selected = checks.select(args.filter, include_dummy=args.with_dummy_failure)
    start = time.perf_counter()
    records = checks.run_checks(selected, prec_bits=args.prec_bits or PrecisionContext.from_env().working_bits,
                                budget=args.budget, tol=args.tol, jobs=args.jobs)
    lines = [r.to_json() for r in records]
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + ("\n" if lines else ""))
    else:
        for line in lines:
            print(line)
    failed = [r for r in records if not r.passed]
    elapsed = time.perf_counter() - start
    print(f"{len(records) - len(failed)}/{len(records)} checks passed in {elapsed:.1f} s", file=sys.stderr)
    for r in failed:
        print(f"FAIL {r.check}: |diff| = {r.diff} > {r.tolerance} {r.error}".rstrip(), file=sys.stderr)
    return EXIT_OK if not failed else EXIT_FAIL


def cmd_table(args) -> int:
    ctx = _ctx(args)
    mp = ctx.mp
    print("value\tnested sum\tclosed form\t|diff|")
    for f in checks.load_fixtures():
        if not f.fixture_id.startswith("examples/"):
            continue
        spec = parse_value(f.lhs)
        v = spec.evaluate(ctx, args.budget).value
        closed = num_eval(canonicalize(parse_expr(f.rhs)), ctx).value
        print(f"{spec}\t{_nstr(mp, v, args.digits)}\t{f.rhs}\t{mp.nstr(abs(v - closed), 3)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mvk", description="Alternating multiple mixed values.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec-bits", type=int, default=None,
                        help="working precision in bits (default 256, or MVK_PREC_BITS)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="outer-term budget (default 2^20)")
    common.add_argument("--digits", type=int, default=30, help="significant digits to print")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a value such as \"T(2,1,'1)\"")
    p.add_argument("spec")
    p.add_argument("--method", choices=("accelerated", "direct"), default="accelerated")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("series", parents=[common], help="print a named generating series")
    p.add_argument("name", help=f"one of {', '.join(SERIES_NAMES)}")
    p.add_argument("order", type=int, nargs="?", default=8)
    p.add_argument("--all", action="store_true", help="also print zero coefficients")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("--filter", default=None, help="substring of the check ids to run")
    p.add_argument("--tol", type=float, default=checks.DEFAULT_TOL, help="default tolerance (1e-7)")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes")
    p.add_argument("--output", default=None, help="write the JSONL report here instead of stdout")
    p.add_argument("--with-dummy-failure", action="store_true", help="add a check that always fails")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", parents=[common], help="print the example list with computed values")
    p.set_defaults(func=cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
