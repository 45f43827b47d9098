"""symorder command line.

Every command prints its results, then one PASS/FAIL line per check, and
exits 0 only when every requested check passed. ``--format structured``
switches to one JSON object per line with sorted keys.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from .algebra import AlgebraError, LieAlgebra, parse_algebra_spec, parse_rational, read_algebra_file
from .feynman import (FeynmanError, coproduct_adjoint, coproduct_trees, counit_check,
                      explicit_display_check)
from .hausdorff import (HausdorffError, bigraded_H, bigraded_check, bch_oracle, diagonal_check,
                        dynkin_D, hausdorff_symmetry_check, oracle_check)
from .parse import ParseError, parse_polynomial
from .report import Report
from .series import SeriesError, phi_symmetric
from .star import StarError, chi_check, star_associativity_check, star_exponential, star_routes
from .suite import CRITERIA, run_criterion, verify_suite
from .trees import (TreeError, contributing_filter, count_ordered, count_table, enumerate_ordered,
                    enumerate_trees, format_count_table)

MAX_N, MAX_CUTOFF, MAX_DEGREE = 4, 6, 5
OUTPUT_ENV = "SYMORDER_OUTPUT_DIR"


class UsageError(ValueError):
    pass


class Output:
    """Collects text or structured lines; written to stdout and optionally to a file."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: List[str] = []

    def text(self, s: str = ""):
        if self.fmt == "text":
            self.lines.extend(str(s).split("\n"))

    def record(self, kind: str, **fields):
        if self.fmt == "structured":
            self.lines.append(json.dumps({"kind": kind, **fields}, sort_keys=True))

    def report(self, rep: Report):
        if self.fmt == "text":
            self.lines.append(rep.line())
            for f in rep.failures[:10]:
                self.lines.append("  " + json.dumps(f, sort_keys=True, default=str))
        else:
            self.lines.append(json.dumps({"kind": "check", **rep.to_record()}, sort_keys=True))

    def render(self) -> str:
        return "\n".join(self.lines) + ("\n" if self.lines else "")


# argument helpers ------------------------------------------------------------

def load_algebra_arg(spec: str) -> LieAlgebra:
    if os.path.exists(spec):
        L = read_algebra_file(spec)
    else:
        L = parse_algebra_spec(spec)
    if L.n > MAX_N:
        raise UsageError(f"dimension {L.n} exceeds the desk-scale bound n <= {MAX_N}")
    return L


def bounded(value: int, name: str, top: int, low: int = 1) -> int:
    if not low <= value <= top:
        raise UsageError(f"{name} must be in {low}..{top}, got {value}")
    return value


def index_arg(value: Optional[int], L: LieAlgebra, name: str) -> List[int]:
    if value is None:
        return list(range(1, L.n + 1))
    if not 1 <= value <= L.n:
        raise UsageError(f"{name} must be in 1..{L.n}")
    return [value]


def vector_arg(text: str, n: int, name: str) -> List[Fraction]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != n:
        raise UsageError(f"{name} needs {n} comma-separated rationals")
    return [parse_rational(p) for p in parts]


# commands ----------------------------------------------------------------------

def cmd_verify(args, out: Output) -> List[Report]:
    L = load_algebra_arg(args.algebra)
    D = bounded(args.cutoff, "cutoff", MAX_CUTOFF, 2)
    rep = verify_suite(L, D, args.seed)
    out.text(f"algebra {L.name}  cutoff {D}")
    return [rep]


def cmd_coproduct(args, out: Output) -> List[Report]:
    L = load_algebra_arg(args.algebra)
    P = bounded(args.degree, "degree", MAX_DEGREE)
    mus = index_arg(args.mu, L, "mu")
    phi = phi_symmetric(L, max(P - 1, 1))
    routes = ["trees", "adjoint"] if args.route == "all" else [args.route]
    reports = []
    for mu in mus:
        results = {}
        if "trees" in routes:
            results["trees"] = coproduct_trees(L, mu, P)
        if "adjoint" in routes:
            results["adjoint"] = coproduct_adjoint(L, phi, mu, P)
        first = results[routes[0]]
        out.text(f"Delta d{mu} (degree <= {P}):")
        out.text(str(first))
        if args.lines:
            for line in first.lines():
                out.text("  " + line)
        out.record("coproduct", algebra=L.name, mu=mu, degree=P, route=routes[0],
                   terms=[[list(Lm), list(Rm), str(c)] for (Lm, Rm), c in first.ordered_terms()])
        if len(results) > 1:
            same = results["trees"] == results["adjoint"]
            fails = [] if same else [{"mu": mu, "trees": str(results["trees"]),
                                      "adjoint": str(results["adjoint"])}]
            reports.append(Report("coproduct-routes", same, {"algebra": L.name, "mu": mu, "degree": P}, fails))
    table = [coproduct_trees(L, mu, P) for mu in range(1, L.n + 1)]
    reports.append(counit_check(table))
    if P >= 4:
        reports.append(explicit_display_check(L, phi_symmetric(L, 4), 4))
    return reports


def cmd_star(args, out: Output) -> List[Report]:
    L = load_algebra_arg(args.algebra)
    reports = []
    if args.route == "exp" or args.k is not None or args.q is not None:
        if args.k is None or args.q is None:
            raise UsageError("the exponential route needs both --k and --q")
        P = bounded(args.degree, "degree", MAX_DEGREE, 0)
        rep = star_exponential(L, vector_arg(args.k, L.n, "--k"), vector_arg(args.q, L.n, "--q"), P)
        out.text(rep.text())
        out.record("star-exponential", inputs=rep.inputs,
                   results={k: str(v) for k, v in rep.results.items()})
        reports.append(rep.to_report())
        return reports
    if args.f is None or args.g is None:
        raise UsageError("star needs --f and --g (or --k and --q)")
    f, g = parse_polynomial(args.f, L.n), parse_polynomial(args.g, L.n)
    h = parse_polynomial(args.h, L.n) if args.h is not None else None
    total = f.degree() + g.degree() + (h.degree() if h is not None else 0)
    if total > MAX_DEGREE + 1:
        raise UsageError(f"total degree {total} exceeds {MAX_DEGREE + 1}")
    routes = {"pbw": ["pbw"], "coproduct": ["coproduct"], "all": ["pbw", "coproduct", "adjoint"]}[args.route]
    rep = star_routes(L, f, g, routes)
    out.text(rep.text())
    out.record("star", inputs=rep.inputs, results={k: str(v) for k, v in rep.results.items()})
    if rep.verdicts:
        reports.append(rep.to_report())
    if h is not None:
        reports.append(star_associativity_check(L, None, f, g, h))
    return reports


def cmd_trees(args, out: Output) -> List[Report]:
    if args.table:
        rows = count_table(bounded(args.table, "table size", 9))
        out.text(format_count_table(rows))
        for w, b, planar, ordered, contributing in rows:
            out.record("tree-count", w=w, b=b, planar=planar, ordered=ordered, contributing=contributing)
        return []
    if args.w is None or args.b is None:
        raise UsageError("trees needs --w and --b (or --table N)")
    w, b = args.w, args.b
    trees = enumerate_trees(w, b)
    if args.contributing:
        trees = [t for t in trees if contributing_filter(t)]
    if args.list or args.ascii:
        if not args.planar:
            items = [o for o in enumerate_ordered(w, b) if not args.contributing or contributing_filter(o.tree)]
            for o in items:
                out.text(o.tree.ascii(o.labels) if args.ascii else str(o))
                if args.ascii:
                    out.text("")
                out.record("tree", canonical=o.tree.canonical(), labels=list(o.labels))
        else:
            for t in trees:
                out.text(t.ascii() if args.ascii else t.canonical())
                if args.ascii:
                    out.text("")
                out.record("tree", canonical=t.canonical())
    if args.count or not (args.list or args.ascii):
        if not args.planar:
            count = count_ordered(w, b) if not args.contributing else sum(
                t.numeration_count() for t in trees)
        else:
            count = len(trees)
        out.text(str(count))
        out.record("tree-count", w=w, b=b, ordered=not args.planar, contributing=args.contributing, count=count)
    return []


def cmd_hausdorff(args, out: Output) -> List[Report]:
    L = load_algebra_arg(args.algebra)
    P = bounded(args.degree, "degree", MAX_DEGREE + 1)
    if args.w is not None or args.b is not None:
        w = args.w if args.w is not None else P - (args.b or 0)
        b = args.b if args.b is not None else P - w
        routes = ["w", "b"] if args.route in ("all", "oracle", "dynkin") else [args.route]
        values = {r: bigraded_H(L, w, b, r) for r in routes}
        first = values[routes[0]]
        out.text(f"H_({w},{b}):")
        out.text(str(first))
        out.record("hausdorff-piece", algebra=L.name, w=w, b=b,
                   components=[str(first[mu]) for mu in range(1, L.n + 1)])
        if len(values) > 1:
            same = values["w"] == values["b"]
            return [Report("bigraded-routes", same, {"algebra": L.name, "w": w, "b": b},
                           [] if same else [{r: str(v) for r, v in values.items()}])]
        return []
    for N in range(1, P + 1):
        D = dynkin_D(L, N) if args.route != "oracle" else bch_oracle(L, N)[N - 1]
        out.text(f"D_{N}:")
        out.text(str(D))
        out.record("hausdorff", algebra=L.name, N=N, components=[str(D[mu]) for mu in range(1, L.n + 1)])
    reports = [hausdorff_symmetry_check(L, N) for N in range(1, P + 1)]
    reports += [diagonal_check(L, N) for N in range(1, P + 1)]
    reports.append(oracle_check(L, P))
    if P <= MAX_DEGREE:
        reports.append(bigraded_check(L, P))
    return [Report.combine("hausdorff", reports, algebra=L.name, degree=P)] if not args.all_checks else reports


def cmd_chi(args, out: Output) -> List[Report]:
    L = load_algebra_arg(args.algebra)
    D = bounded(args.cutoff, "cutoff", MAX_CUTOFF, 2)
    top = min(args.max_degree, D - 1)
    reports = []
    for mu in index_arg(args.mu, L, "mu"):
        for nu in index_arg(args.nu, L, "nu"):
            reports.append(chi_check(L, mu, nu, D, top))
    return reports


def cmd_check_all(args, out: Output) -> List[Report]:
    which = sorted(CRITERIA) if not args.criteria else [int(x) for x in args.criteria.split(",")]
    for k in which:
        if k not in CRITERIA:
            raise UsageError(f"unknown criterion {k}")
    reports = []
    for k in which:
        rep = run_criterion(k)
        if not args.timing:
            rep.details.pop("seconds", None)
        reports.append(rep)
    return reports


# parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text",
                        help="text (default) or one JSON object per line")
    common.add_argument("--output-dir", default=os.environ.get(OUTPUT_ENV),
                        help=f"also write the output to <dir>/<command>.<ext> (default: ${OUTPUT_ENV})")
    common.add_argument("--timing", action="store_true", help="report wall-clock time per check")

    alg = argparse.ArgumentParser(add_help=False)
    alg.add_argument("--algebra", default="su2",
                     help="TOML file, or builtin: su2, heisenberg, abelian:N, kappa:N[:a1,..,aN]")

    p = argparse.ArgumentParser(prog="symorder",
                                description="Exact symmetric-ordering computations for Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common, alg],
                       help="jacobi, phi equation, theta-xi round trip, coderivation, commuting partials")
    s.add_argument("--cutoff", type=int, default=6, help=f"series cutoff D (2..{MAX_CUTOFF})")
    s.add_argument("--seed", type=int, default=20240611)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("coproduct", parents=[common, alg], help="deformed coproduct of d^mu")
    s.add_argument("--mu", type=int, help="upper index (default: all)")
    s.add_argument("--degree", type=int, default=4, help=f"total degree P (1..{MAX_DEGREE})")
    s.add_argument("--route", choices=("trees", "adjoint", "all"), default="all")
    s.add_argument("--lines", action="store_true", help="also print one term per line")
    s.set_defaults(func=cmd_coproduct)

    s = sub.add_parser("star", parents=[common, alg], help="star products by several routes")
    s.add_argument("--f", help='polynomial such as "x1*x2 + 1/2*x3"')
    s.add_argument("--g")
    s.add_argument("--h", help="third factor: adds the associativity check")
    s.add_argument("--k", help="comma-separated rationals for exp(k.x)")
    s.add_argument("--q", help="comma-separated rationals for exp(q.x)")
    s.add_argument("--degree", type=int, default=4, help="order P for the exponential check")
    s.add_argument("--route", choices=("pbw", "coproduct", "exp", "all"), default="all",
                   help="all compares the pbw route with both coproduct routes; exp needs --k/--q")
    s.set_defaults(func=cmd_star)

    s = sub.add_parser("trees", parents=[common], help="count, list or draw bicolored planar trees")
    s.add_argument("--w", type=int, help="white nodes")
    s.add_argument("--b", type=int, help="black nodes")
    s.add_argument("--count", action="store_true")
    s.add_argument("--list", action="store_true")
    s.add_argument("--ascii", action="store_true")
    s.add_argument("--planar", action="store_true",
                   help="planar trees without numerations (default: ordered trees)")
    s.add_argument("--contributing", action="store_true", help="apply the selection-rule filter")
    s.add_argument("--table", type=int, metavar="N", help="count table for w + b <= N")
    s.set_defaults(func=cmd_trees)

    s = sub.add_parser("hausdorff", parents=[common, alg], help="Hausdorff series D_N(k, q)")
    s.add_argument("--degree", type=int, default=4, help=f"top degree (1..{MAX_DEGREE + 1})")
    s.add_argument("--w", type=int)
    s.add_argument("--b", type=int)
    s.add_argument("--route", choices=("dynkin", "oracle", "w", "b", "all"), default="all")
    s.add_argument("--all-checks", action="store_true", help="one line per check instead of a summary")
    s.set_defaults(func=cmd_hausdorff)

    s = sub.add_parser("chi", parents=[common, alg], help="the chi correction for M operators")
    s.add_argument("--mu", type=int)
    s.add_argument("--nu", type=int)
    s.add_argument("--cutoff", type=int, default=5)
    s.add_argument("--max-degree", type=int, default=2, help="test monomials up to this degree")
    s.set_defaults(func=cmd_chi)

    s = sub.add_parser("check-all", parents=[common], help="the full acceptance suite")
    s.add_argument("--criteria", help="comma-separated subset, e.g. 1,7")
    s.set_defaults(func=cmd_check_all)
    return p


INPUT_ERRORS = (UsageError, AlgebraError, ParseError, SeriesError, TreeError, FeynmanError,
                HausdorffError, StarError, OSError)


def run_command(args) -> int:
    out = Output(args.format)
    t0 = time.perf_counter()
    try:
        reports = args.func(args, out)
    except INPUT_ERRORS as exc:
        record = {"kind": "error", "command": args.command, "type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ParseError):
            record.update(position=exc.position, expected=list(exc.expected))
        print(json.dumps(record, sort_keys=True), file=sys.stderr)
        return 2
    for rep in reports:
        out.report(rep)
    if args.timing and args.command != "check-all":
        out.text(f"elapsed {time.perf_counter() - t0:.2f}s")
    ok = all(r.passed for r in reports)
    if args.format == "text" and len(reports) > 1:
        out.text(f"{'PASS' if ok else 'FAIL'}: {sum(r.passed for r in reports)}/{len(reports)} checks")
    text = out.render()
    sys.stdout.write(text)
    if args.output_dir:
        d = Path(args.output_dir)
        d.mkdir(parents=True, exist_ok=True)
        ext = "jsonl" if args.format == "structured" else "txt"
        (d / f"{args.command}.{ext}").write_text(text, encoding="utf-8")
    if not ok:
        for rep in reports:
            if not rep.passed:
                print(rep.to_json(), file=sys.stderr)
    return 0 if ok else 1


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return run_command(args)


if __name__ == "__main__":
    sys.exit(main())
