"""Command-line entry point.

Exit codes: 0 success, 1 a verification failed, 2 usage or input error,
3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .checks import SUITES, VerificationReport, applicable, make_context, run_suite
from .fox import ModelError, homology_model
from .hopf import primitive_generators, primitive_part
from .lattice import describe
from .oracle import DEFAULT_CAP, ResourceLimitError, relative_complex
from .space import (BUILTINS, SpaceError, builtin_space, fundamental_presentation,
                    load_space_file, to_dict)
from .truncring import build_ring, format_poly, graded_piece, ideal_quotient

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def load_space(source: str):
    """A builtin name (``wedge2``, ``genus(2)``) or a path to a JSON space file."""
    if os.path.exists(source) or source.endswith(".json"):
        return load_space_file(source)
    return builtin_space(source)


def _context(args):
    ss, bp = load_space(args.space)
    return make_context(ss, bp, getattr(args, "distinct_endpoints", False),
                        getattr(args, "cap", DEFAULT_CAP), getattr(args, "seed", 0))


def _rows(rows: list[tuple[str, ...]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip() for r in rows)


# ---------------------------------------------------------------------------
# Commands


def cmd_spaces(args) -> int:
    if args.action == "list":
        print(_rows([("space", "cells")] + [(k, v) for k, v in BUILTINS.items()]))
        return EXIT_OK
    if not args.name:
        raise SpaceError("spaces show needs a space name or file")
    ss, bp = load_space(args.name)
    if args.json:
        print(json.dumps(to_dict(ss, bp), indent=2, sort_keys=True))
        return EXIT_OK
    gp = fundamental_presentation(ss, bp)
    info = ss.describe()
    print(f"{info['name']}: simplices per dimension {tuple(info['counts'])}, "
          f"Euler characteristic {info['euler_characteristic']}")
    print(f"basepoints a={ss.names[0][bp.a]} b={ss.names[0][bp.b]}")
    print(f"generators {', '.join(gp.names) or '-'}")
    for r in gp.relators:
        print("relator " + " ".join((gp.names[abs(x) - 1] + ("" if x > 0 else "^-1")) for x in r))
    print(f"H1 = {describe(gp.abelianization().invariants())}")
    return EXIT_OK


def cmd_compute(args) -> int:
    ctx = _context(args)
    n, gp = args.n, ctx.gp
    rows: list[tuple[str, ...]]
    if args.what == "ring":
        ring = build_ring(gp, n)
        rows = [("quantity", "group"), (f"Zpi/I^{n + 1}", describe(ring.group.invariants()))]
        for k in range(1, n + 1):
            rows.append((f"I^{k}/I^{n + 1}", describe(ideal_quotient(ring, k).invariants())))
    elif args.what == "graded":
        ring = build_ring(gp, n)
        rows = [("piece", "group")]
        rows += [(f"A{k}", describe(graded_piece(ring, k).invariants())) for k in range(1, n + 1)]
    elif args.what == "primitives":
        ring = build_ring(gp, n)
        rows = [("primitives", describe(primitive_part(ring).invariants()))]
        names = list(gp.names)
        rows += [("generator", format_poly(p, names)) for p in primitive_generators(ring)]
    else:
        a, b = ctx.bp.a, ctx.bp.b
        if args.method == "fox":
            inv = homology_model(gp, n, a, b).group.invariants()
        else:
            inv = relative_complex(ctx.ss, n, "both", ctx.bp, cap=ctx.cap).invariants(n)
        rows = [("group", "value"),
                (f"H{n}(X^{n}, X({n})) [{args.method}]", describe(inv))]
    print(_rows(rows))
    return EXIT_OK


def _emit(report: VerificationReport, args) -> int:
    if args.deterministic:
        for c in report.checks:
            c.ms = 0
    if args.format == "structured":
        print(report.to_json())
    else:
        print(report.table())
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")
    return EXIT_OK if report.verdict == "pass" else EXIT_FAIL


def cmd_verify(args) -> int:
    ctx = _context(args)
    if not applicable(args.suite, ctx):
        raise ModelError(f"suite {args.suite} does not apply to this space and endpoint choice")
    nmin = 2 if args.suite == "composition" else 1
    checks = run_suite(args.suite, ctx, args.n, nmin)
    report = VerificationReport(ctx.ss.name, list(range(nmin, args.n + 1)), ctx.endpoint_names, checks)
    return _emit(report, args)


def cmd_report(args) -> int:
    ctx = _context(args)
    checks = []
    for suite in SUITES:
        if applicable(suite, ctx):
            nmin = 2 if suite == "composition" else 1
            checks += run_suite(suite, ctx, args.n, nmin)
    checks.sort(key=lambda c: c.check_id)
    report = VerificationReport(ctx.ss.name, list(range(1, args.n + 1)), ctx.endpoint_names, checks)
    return _emit(report, args)


# ---------------------------------------------------------------------------
# Parser


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("n must be >= 1")
    return v


def _space_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--space", required=True, help="builtin name or JSON space file")
    p.add_argument("--n", type=_positive, required=True, help="truncation degree")
    p.add_argument("--distinct-endpoints", action="store_true",
                   help="use b != a (a whisker is attached to one-vertex spaces)")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="simplex cap for the oracle")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")


def _report_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("table", "structured"), default="table")
    p.add_argument("--output", help="also write the structured report to this file")
    p.add_argument("--deterministic", action="store_true",
                   help="zero the timing field so output is byte-stable")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bdgpaths",
                                     description="Truncated path algebras and relative homology of powers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spaces", help="list or show spaces")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p.add_argument("--json", action="store_true", help="print the space file form")
    p.set_defaults(func=cmd_spaces)

    p = sub.add_parser("compute", help="compute one quantity")
    p.add_argument("what", choices=("ring", "graded", "primitives", "homology"))
    _space_args(p)
    p.add_argument("--method", choices=("fox", "oracle"), default="fox")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="run one verification suite")
    p.add_argument("suite", choices=SUITES)
    _space_args(p)
    _report_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="run every applicable suite")
    _space_args(p)
    _report_args(p)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (SpaceError, ModelError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
