"""
Command-line front end.

Exit codes: 0 when the computation finished (whatever the verdict),
2 for malformed input, 3 when the crossing cap is exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bracket import DEFAULT_MAX_CROSSINGS, bracket, bracket_renormalized, format_jones_t, jones
from .errors import IntegralityViolation, MalformedDiagram, TooManyCrossings
from .formats import (ReportFile, load_linkfile, report_from_invariant,
                      report_from_periodicity)
from .periodicity import (GRID_NS, GRID_PRIMES, PASS_NOTE, bracket_periodicity_test,
                          grid_experiment, jones_periodicity_test, manifold_periodicity_test,
                          poincare_scan, primes_between)
from .so3 import brieskorn_invariant, is_odd_prime, so3_context, surgery_invariant

EXIT_OK, EXIT_INPUT, EXIT_CAP = 0, 2, 3


class InputError(Exception):
    pass


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not is_odd_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not an odd prime")
    return p


def _write_report(rep: ReportFile, path: str | None) -> None:
    if path:
        Path(path).write_text(rep.dumps())


def _print_periodicity(rep, out) -> None:
    print(f"criterion: {rep.criterion}", file=out)
    print(f"p: {rep.p}", file=out)
    print(f"ring: {rep.ring}", file=out)
    print(f"verdict: {rep.verdict}", file=out)
    if rep.criterion == "manifold":
        phases = " ".join(map(str, rep.passing_phases)) or "none"
        print(f"passing j: {phases}", file=out)
    print(f"notes: {rep.note}", file=out)


# -- commands -------------------------------------------------------------------


def cmd_bracket(args, out) -> int:
    d = load_linkfile(args.file)
    b = bracket_renormalized(d.pd, args.max_crossings) if args.renormalized else bracket(d.pd, args.max_crossings)
    print(b, file=out)
    return EXIT_OK


def cmd_jones(args, out) -> int:
    d = load_linkfile(args.file)
    print(format_jones_t(jones(d, args.max_crossings)), file=out)
    return EXIT_OK


def cmd_invariant(args, out) -> int:
    d = load_linkfile(args.file)
    inv = surgery_invariant(d, so3_context(args.p), args.max_crossings)
    print(inv, file=out)
    print(f"ring: {inv.ring_name}", file=out)
    _write_report(report_from_invariant(inv), args.report)
    return EXIT_OK


def cmd_brieskorn(args, out) -> int:
    if args.n % 2 == 0 or abs(args.n) < 3:
        raise InputError("--n must be odd with |n| >= 3")
    inv = brieskorn_invariant(args.n, so3_context(args.p))
    print(inv, file=out)
    _write_report(report_from_invariant(inv, f"Brieskorn sphere from +1 surgery on T(2,{args.n})"),
                  args.report)
    return EXIT_OK


def _need_p(args) -> int:
    if args.p is None:
        raise InputError("--p is required for this check")
    return args.p


def _check_link(args, out) -> int:
    p = _need_p(args)
    d = load_linkfile(args.link)
    if args.mode == "jones":
        rep = jones_periodicity_test(d, p, args.max_crossings)
    else:
        mode = "with_writhe" if args.mode == "bracket" else "framed"
        rep = bracket_periodicity_test(d, p, mode, args.max_crossings)
    _print_periodicity(rep, out)
    _write_report(report_from_periodicity(rep), args.report)
    return EXIT_OK


def _check_manifold(args, out) -> int:
    p = _need_p(args)
    d = load_linkfile(args.manifold)
    if d.colors is not None and any(c is not None for c in d.colors):
        raise InputError("--manifold expects a surgery presentation without colored components")
    inv = surgery_invariant(d, so3_context(p), args.max_crossings)
    if inv.ring_tag != "2p":
        raise InputError("the manifold criterion needs a homology sphere (linking matrix of determinant +-1)")
    print(f"I_{p} = {inv}", file=out)
    rep = manifold_periodicity_test(inv)
    _print_periodicity(rep, out)
    _write_report(report_from_periodicity(rep), args.report)
    return EXIT_OK


def _check_brieskorn(args, out) -> int:
    p = _need_p(args)
    n = args.brieskorn
    if n % 2 == 0 or abs(n) < 3:
        raise InputError("--brieskorn needs an odd n with |n| >= 3")
    inv = brieskorn_invariant(n, so3_context(p))
    print(f"I_{p} = {inv}", file=out)
    rep = manifold_periodicity_test(inv)
    _print_periodicity(rep, out)
    _write_report(report_from_periodicity(rep), args.report)
    return EXIT_OK


def _phase_text(phases) -> str:
    return ",".join(map(str, phases)) if phases else "-"


def _check_experiment(args, out) -> int:
    result = grid_experiment(GRID_PRIMES, GRID_NS, jobs=args.jobs)
    rows = [("n", "p", "verdict", "divisible", "passing_j")]
    for c in result.cells:
        rows.append((str(c.n), str(c.p), c.verdict, "yes" if c.divisible else "no",
                     _phase_text(c.passing_phases)))
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    table = "\n".join("  ".join(v.rjust(w) for v, w in zip(r, widths)).rstrip() for r in rows)
    s = result.summary()
    exceptional = " ".join(f"({n},{p})" for n, p in result.exceptional)
    summary = (f"total {s['total']}  passing {s['passing']}  divisible_passing "
               f"{s['divisible_passing']}  exceptional {s['exceptional']}\n"
               f"exceptional pairs: {exceptional}\n"
               f"a pass is {PASS_NOTE}")
    print(table, file=out)
    print(summary, file=out)
    if args.out_dir:
        from .plotting import plot_grid

        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        payload = {
            "summary": s,
            "exceptional": [list(t) for t in result.exceptional],
            "cells": [{"n": c.n, "p": c.p, "verdict": c.verdict, "divisible": c.divisible,
                       "passing_j": list(c.passing_phases),
                       "invariant": {str(e): v for e, v in enumerate(c.invariant) if v}}
                      for c in result.cells],
        }
        (d / "grid.json").write_text(json.dumps(payload, indent=2) + "\n")
        (d / "grid.tsv").write_text("\n".join("\t".join(r) for r in rows) + "\n")
        (d / "grid.txt").write_text(table + "\n" + summary + "\n")
        plot_grid(result, d / "grid.png")
    return EXIT_OK


def _check_poincare(args, out) -> int:
    if args.max_p < 5:
        raise InputError("--max-p must be at least 5")
    scan = poincare_scan(primes_between(args.min_p, args.max_p), jobs=args.jobs)
    for q, rep in scan:
        print(f"p={q}\t{rep.verdict}\tj={_phase_text(rep.passing_phases)}\t{rep.note}", file=out)
    if args.out_dir:
        from .plotting import plot_poincare_scan

        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        payload = [report_from_periodicity(rep).to_dict() for _, rep in scan]
        (d / "poincare.json").write_text(json.dumps(payload, indent=2) + "\n")
        plot_poincare_scan(scan, d / "poincare.png")
    return EXIT_OK


def cmd_check(args, out) -> int:
    if args.link:
        return _check_link(args, out)
    if args.manifold:
        return _check_manifold(args, out)
    if args.brieskorn is not None:
        return _check_brieskorn(args, out)
    if args.experiment:
        return _check_experiment(args, out)
    return _check_poincare(args, out)


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-crossings", type=int, default=DEFAULT_MAX_CROSSINGS,
                        help=f"cap on crossings of any (cabled) diagram, default {DEFAULT_MAX_CROSSINGS}")

    parser = argparse.ArgumentParser(prog="so3period",
                                     description="Kauffman bracket, SO(3) invariants and periodicity tests.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", parents=[common], help="Kauffman bracket of a link file")
    p.add_argument("file")
    p.add_argument("--renormalized", action="store_true", help="print [L] = -(A^2 + A^-2) <L>")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("jones", parents=[common], help="Jones polynomial of a link file")
    p.add_argument("file")
    p.set_defaults(func=cmd_jones)

    p = sub.add_parser("invariant", parents=[common], help="SO(3) invariant from a surgery presentation")
    p.add_argument("file")
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--report", metavar="JSON")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("brieskorn", parents=[common], help="closed formula for +1 surgery on T(2,n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--report", metavar="JSON")
    p.set_defaults(func=cmd_brieskorn)

    p = sub.add_parser("check", parents=[common], help="periodicity criteria and experiments")
    what = p.add_mutually_exclusive_group(required=True)
    what.add_argument("--link", metavar="FILE")
    what.add_argument("--manifold", metavar="FILE")
    what.add_argument("--brieskorn", type=int, metavar="N")
    what.add_argument("--experiment", action="store_true")
    what.add_argument("--poincare-scan", action="store_true")
    p.add_argument("--p", type=_prime)
    p.add_argument("--mode", choices=("jones", "bracket", "framed"), default="jones",
                   help="link criterion (default jones)")
    p.add_argument("--min-p", type=int, default=5)
    p.add_argument("--max-p", type=int, default=61)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out-dir", metavar="DIR", help="write JSON, TSV and PNG outputs here")
    p.add_argument("--report", metavar="JSON")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (MalformedDiagram, InputError, FileNotFoundError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TooManyCrossings as exc:
        print(f"error: TooManyCrossings: {exc}", file=sys.stderr)
        return EXIT_CAP
    except IntegralityViolation as exc:
        print(f"error: IntegralityViolation: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
