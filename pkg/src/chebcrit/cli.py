"""Command-line front end: ``chebcrit {tau,limit,table,quadrature,verify}``.

Exit codes: 0 ok, 1 usage error, 2 a checked inequality or identity failed,
3 numerical failure.  ``CHEBY_CRITICAL_SEED`` is reserved and currently
ignored; randomised checks live in the test suite.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import nullcontext
from typing import Sequence

from .acceptance import run_suite
from .asympt import s_star, tau_star_asymptotic, tau_star_exact
from .bounds import bound_set, tau_star_upper
from .errors import DomainError, NumericError
from .quadrature import classical_weights, golub_welsch, petras_weights
from .roots import omega as _omega
from .sweep import COLUMNS, SweepSpec, compute_rows, format_float, render
from .tau import tau_closed_form, tau_direct

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT, EXIT_NUMERIC = 0, 1, 2, 3
ROUTE_RTOL = 1e-9
QUAD_RTOL = 1e-10


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _columns(text: str) -> tuple[str, ...]:
    cols = tuple(c.strip() for c in text.split(",") if c.strip())
    bad = [c for c in cols if c not in COLUMNS]
    if bad or not cols:
        raise argparse.ArgumentTypeError(f"unknown columns {bad}; choose from {','.join(COLUMNS)}")
    return cols


def _out(path: str | None):
    return open(path, "w", encoding="utf-8", newline="\n") if path else nullcontext(sys.stdout)


def cmd_tau(args) -> int:
    n, k = args.n, args.k
    if k < 1 or n < k + 2:
        raise UsageError(f"need k >= 1 and n >= k + 2, got n={n}, k={k}")
    w = _omega(n, k).omega
    td = tau_direct(n, k, w).value
    tc = tau_closed_form(n, k, w).value
    bs = bound_set(n, k, w)
    rel = abs(tc - td) / td
    rows = [
        ("omega", w),
        ("tau_direct", td),
        ("tau_closed", tc),
        ("rel_diff", rel),
        ("lower", bs.lower_16),
        ("sd12", bs.sd_12),
        ("combined14", bs.combined_14),
        ("thm15", bs.thm_15),
        ("cor11", bs.cor11),
        ("ratio_bound", bs.ratio_16p),
    ]
    print(f"n = {n}, k = {k}")
    for name, v in rows:
        print(f"{name:<12} {format_float(v)}")
    if bs.sd_extended:
        print("note: sd12 at k = 1 uses S = 1 outside the majorant's stated range")
    sandwich = bs.sandwiches(td)
    print(f"sandwich {'PASS' if sandwich else 'FAIL'}")
    agree = rel <= ROUTE_RTOL
    if not agree:
        print(f"routes disagree beyond {ROUTE_RTOL:g}")
    return EXIT_OK if sandwich and agree else EXIT_INVARIANT


def cmd_limit(args) -> int:
    k = args.k
    if k < 1:
        raise UsageError(f"need k >= 1, got k={k}")
    st = s_star(k)
    exact = tau_star_exact(k)
    asym = tau_star_asymptotic(k)
    bound = tau_star_upper(k)
    for name, v in (
        ("tau_star", exact),
        ("tau_star_asym", asym),
        ("ratio", asym / exact),
        ("bessel_zero", st.bessel_zero),
        ("s_star", st.s_star),
        ("q", st.q),
    ):
        print(f"{name:<14} {format_float(v)}")
    ok = exact <= bound
    print(f"bound {format_float(bound)} {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_INVARIANT


def cmd_table(args) -> int:
    k_max = args.k_min if args.k_max is None else args.k_max
    try:
        spec = SweepSpec(args.k_min, k_max, args.n_min, args.n_max, args.columns, args.format)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    text = render(spec, compute_rows(spec, jobs=args.jobs))
    with _out(args.out) as fh:
        fh.write(text)
    return EXIT_OK


def cmd_quadrature(args) -> int:
    lam, n = args.lam, args.n
    if not lam > -0.5 or n < 1:
        raise UsageError(f"need lambda > -1/2 and n >= 1, got lambda={lam}, n={n}")
    rules = [golub_welsch(lam, n)]
    if lam == int(lam) and lam >= 0:
        rules.append(petras_weights(int(lam), n))
    if lam > 1:
        rules.append(classical_weights(lam, n))
    dev = 0.0
    for i, a in enumerate(rules):
        for b in rules[i + 1:]:
            dev = max(dev, float(max(abs(a.weights - b.weights) / abs(a.weights))))
            dev = max(dev, float(max(abs(a.nodes - b.nodes))))
    with _out(args.out) as fh:
        fh.write(",".join(["node"] + [r.method for r in rules]) + "\n")
        for i in range(n):
            vals = [rules[0].nodes[i]] + [r.weights[i] for r in rules]
            fh.write(",".join(format_float(float(v)) for v in vals) + "\n")
    # Keep stdout a clean CSV when it carries the table.
    summary = sys.stderr if args.out is None else sys.stdout
    print(f"max pairwise relative deviation {dev:.3g}", file=summary)
    return EXIT_OK if dev <= QUAD_RTOL else EXIT_INVARIANT


def cmd_verify(args) -> int:
    results = run_suite(
        profile=args.profile, fault=args.inject_fault, jobs=args.jobs, stream=sys.stdout
    )
    passed = sum(r.passed for r in results)
    total = sum(r.seconds for r in results)
    print(f"{passed}/{len(results)} criteria passed in {total:.1f}s")
    return EXIT_OK if passed == len(results) else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="chebcrit",
        description="Largest critical values of Chebyshev polynomial derivatives.",
    )
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("tau", help="tau_{n,k} by both routes with every bound")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_tau)

    s = sub.add_parser("limit", help="the n -> infinity limit tau_k* and its asymptotics")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_limit)

    s = sub.add_parser("table", help="sweep (n, k) and emit CSV or JSON")
    s.add_argument("--k-min", type=_positive, default=1)
    s.add_argument("--k-max", type=_positive, default=None, help="defaults to --k-min")
    s.add_argument("--n-min", type=int, default=None, help="default k+2")
    s.add_argument("--n-max", type=int, default=None, help="default k+200")
    s.add_argument(
        "--columns", type=_columns, default=COLUMNS,
        help="comma-separated subset of: " + ",".join(COLUMNS),
    )
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--jobs", type=_positive, default=1)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("quadrature", help="Gauss-Gegenbauer nodes and weights by every construction")
    s.add_argument("--lambda", dest="lam", type=float, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_quadrature)

    s = sub.add_parser("verify", help="run the acceptance checks")
    s.add_argument("--profile", choices=("quick", "full"), default="quick")
    s.add_argument("--jobs", type=_positive, default=1)
    s.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"chebcrit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericError, ArithmeticError) as exc:
        print(f"chebcrit: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
