"""Command-line front end: ``lucasconv <subcommand> [options]``.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 degenerate parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from typing import List, Optional, Sequence, Tuple

from .emit import FORMATS, emit, emit_basis
from .engine import derive_closed_form, evaluate_closed_form, verify_closed_form
from .errors import BudgetExceeded, DegenerateParams, ZeroQ
from .oracle import DEFAULT_BUDGET, s_enum, s_series
from .sequences import LucasParams, lucas_u, lucas_v
from .series import check_proposition
from .triangles import triangle_table

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3

PARAM_MATRIX = [
    LucasParams(1, -1, 1),
    LucasParams(2, -1, 1),
    LucasParams(1, -1, 2),
    LucasParams(3, 2, 1),
    LucasParams(3, 2, 2),
]

BENCH_HEADER = ["method", "D", "n", "nanoseconds", "value-digits"]


class UsageError(Exception):
    pass


def _params(args) -> LucasParams:
    if args.k < 1:
        raise UsageError(f"--k must be >= 1, got {args.k}")
    return LucasParams(args.p, args.q, args.k)


def _parse_triple(text: str) -> LucasParams:
    try:
        p, q, k = (int(x) for x in text.split(","))
        return LucasParams(p, q, k)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected p,q,k with k >= 1, got {text!r}") from exc


def _n_range(args, low: int) -> range:
    if args.n is not None and args.nmax is not None:
        raise UsageError("give either --n or --nmax, not both")
    if args.n is not None:
        if args.n < low:
            raise UsageError(f"--n must be >= {low}, got {args.n}")
        return range(args.n, args.n + 1)
    hi = args.nmax if args.nmax is not None else 20
    if hi < low:
        raise UsageError(f"--nmax must be >= {low}, got {hi}")
    return range(low, hi + 1)


def cmd_seq(args) -> Tuple[int, str]:
    params = _params(args)
    step = params.k if args.strided else 1
    rows = [(n, lucas_u(params, n * step), lucas_v(params, n * step)) for n in _n_range(args, 0)]
    if args.format == "json":
        return EXIT_OK, json.dumps([{"n": n, "U": u, "V": v} for n, u, v in rows], indent=2) + "\n"
    return EXIT_OK, "".join(f"{n} {u} {v}\n" for n, u, v in rows)


def cmd_triangle(args) -> Tuple[int, str]:
    if args.max < (0 if args.kind == "a" else 1):
        raise UsageError(f"--max too small for triangle {args.kind}")
    table = triangle_table(args.kind, args.max)
    return EXIT_OK, table.to_json() if args.format == "json" else table.to_text()


def cmd_conv(args) -> Tuple[int, str]:
    params = _params(args)
    if args.d < 1:
        raise UsageError(f"--d must be >= 1, got {args.d}")
    ns = _n_range(args, 0)
    if args.method == "enum":
        values = [s_enum(params, args.d, n, budget=args.budget).value for n in ns]
    else:
        table = s_series(params, args.d, ns[-1])
        values = [table[n].value for n in ns]
    if args.format == "json":
        return EXIT_OK, json.dumps([str(v) for v in values]) + "\n"
    return EXIT_OK, "".join(f"{v}\n" for v in values)


def cmd_derive(args) -> Tuple[int, str]:
    if args.D < 1:
        raise UsageError(f"--D must be >= 1, got {args.D}")
    if args.fib_basis:
        params = _params(args)
        return EXIT_OK, emit_basis(derive_closed_form(args.D), params, args.format)
    if args.numeric:
        return EXIT_OK, emit(derive_closed_form(args.D, _params(args)), args.format)
    return EXIT_OK, emit(derive_closed_form(args.D), args.format)


def cmd_verify(args) -> Tuple[int, str]:
    params = _params(args)
    if args.D < 1:
        raise UsageError(f"--D must be >= 1, got {args.D}")
    n_lo = args.nmin if args.nmin is not None else args.D
    if n_lo < args.D or args.nmax < n_lo:
        raise UsageError(f"need D <= nmin <= nmax, got D={args.D}, nmin={n_lo}, nmax={args.nmax}")
    report = verify_closed_form(derive_closed_form(args.D), params, n_lo, args.nmax)
    return (EXIT_OK if report.passed else EXIT_VERIFY_FAILED), report.summary() + "\n"


def cmd_check_proposition(args) -> Tuple[int, str]:
    matrix = args.params or PARAM_MATRIX
    if args.dmax < 1 or args.N <= args.dmax + 2:
        raise UsageError("need dmax >= 1 and N > dmax + 2")
    ds = range(1, args.dmax + 1)
    label_width = max(len(str(p)) for p in matrix)
    lines = ["params".ljust(label_width) + "".join(f" {'d=' + str(d):>5}" for d in ds)]
    ok = True
    for params in matrix:
        cells = []
        for d in ds:
            passed = check_proposition(params, d, args.N)
            ok &= passed
            cells.append("pass" if passed else "FAIL")
        lines.append(str(params).ljust(label_width) + "".join(f" {c:>5}" for c in cells))
    return (EXIT_OK if ok else EXIT_VERIFY_FAILED), "\n".join(lines) + "\n"


def _timed(fn):
    t0 = time.perf_counter_ns()
    value = fn()
    return time.perf_counter_ns() - t0, value


def cmd_bench(args) -> Tuple[int, str]:
    params = _params(args)
    D = args.D
    if D < 1 or args.nmax < D or args.step < 1:
        raise UsageError("need D >= 1, nmax >= D and step >= 1")
    ns = list(range(D, args.nmax + 1, args.step))
    if ns[-1] != args.nmax:
        ns.append(args.nmax)
    cf = derive_closed_form(D)
    evaluate_closed_form(cf, params, D)  # build the numeric specialization outside the timings
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    for n in ns:
        try:
            ns_enum, v = _timed(lambda: s_enum(params, D, n, budget=args.budget).value)
            writer.writerow(["enum", D, n, ns_enum, len(str(abs(v)))])
        except BudgetExceeded as exc:
            print(f"skipping enum at n={n}: {exc}", file=sys.stderr)
        ns_series, v = _timed(lambda: s_series(params, D, n)[n].value)
        writer.writerow(["series", D, n, ns_series, len(str(abs(v)))])
        ns_cf, v = _timed(lambda: evaluate_closed_form(cf, params, n))
        writer.writerow(["closed-form", D, n, ns_cf, len(str(abs(v.numerator)))])
    return EXIT_OK, buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=1, help="recurrence parameter p (default 1)")
    common.add_argument("--q", type=int, default=-1, help="recurrence parameter q (default -1)")
    common.add_argument("--k", type=int, default=1, help="stride k >= 1 (default 1)")
    common.add_argument("--out", metavar="PATH", help="write results to PATH instead of stdout")

    parser = argparse.ArgumentParser(
        prog="lucasconv",
        description="Closed forms for convolution sums of generalized Fibonacci numbers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", parents=[common], help="print U_n and V_n")
    p.add_argument("--n", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--strided", action="store_true", help="print U_{nk}, V_{nk}")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("triangle", parents=[common], help="print the a or b coefficient triangle")
    p.add_argument("kind", choices=("a", "b"))
    p.add_argument("--max", type=int, default=6)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_triangle)

    p = sub.add_parser("conv", parents=[common], help="brute-force s_d(n)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--method", choices=("enum", "series"), default="series")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max compositions for enum")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_conv)

    p = sub.add_parser("derive", parents=[common], help="derive the closed form of s_D(n)")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--numeric", action="store_true", help="specialize to --p/--q/--k")
    p.add_argument("--fib-basis", action="store_true",
                   help="reduce to the basis U_{nk}, U_{(n-1)k} at --p/--q/--k")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("verify", parents=[common], help="check a closed form against the oracle")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--nmin", type=int)
    p.add_argument("--nmax", type=int, default=60)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check-proposition", parents=[common],
                       help="check the differential identity for F_k as truncated series")
    p.add_argument("--dmax", type=int, default=6)
    p.add_argument("--N", type=int, default=30)
    p.add_argument("--params", type=_parse_triple, action="append", metavar="p,q,k",
                   help="parameter triple (repeatable); default is the standard five-set matrix")
    p.set_defaults(func=cmd_check_proposition)

    p = sub.add_parser("bench", parents=[common], help="time enumeration vs series vs closed form (CSV)")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--nmax", type=int, default=30)
    p.add_argument("--step", type=int, default=5)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_bench)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    """Parse argv, dispatch, write output; return the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, text = args.func(args)
    except UsageError as exc:
        print(f"lucasconv {args.command}: error: {exc}", file=stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"lucasconv {args.command}: error: {exc}", file=stderr)
        return EXIT_USAGE
    except (DegenerateParams, ZeroQ) as exc:
        print(f"lucasconv {args.command}: degenerate parameters: {exc}", file=stderr)
        return EXIT_DEGENERATE
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
