"""Command-line interface.

Exit status: 0 clean, 1 a theorem violation was found, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from fractions import Fraction
from itertools import chain
from typing import List, Optional, Sequence

from . import constructions, criteria, harness, oracles
from .enumeration import independence_polynomial
from .graph import Graph, GraphError, encode_graph6, labels, open_neighborhood, parse_graph6

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

THEOREM_KEYS = {
    "local-expansion": "local_expansion",
    "threshold": "threshold",
    "coef-ineq": "coef_ineq",
    "w2-facts": "w2_facts",
    "product-lemma": "components",
    "criteria": "criteria_soundness",
}


class UsageError(Exception):
    pass


def parse_target(text: str) -> Graph:
    """A family expression (``C5``, ``K2*K1+P3``) or a graph6 record."""
    try:
        if constructions.looks_like_expression(text):
            return constructions.parse_expression(text)
        return parse_graph6(text)
    except (GraphError, constructions.BadSpec) as exc:
        raise UsageError(f"cannot read graph {text!r}: {exc}") from exc


def _int_list(text: str) -> tuple:
    try:
        values = tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("p values must be positive integers")
    return values


def _lambda_list(text: str) -> tuple:
    try:
        return tuple(sorted({harness.parse_lambda(x) for x in text.split(",") if x.strip()}))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _options(args: argparse.Namespace) -> harness.SweepOptions:
    kwargs = {}
    if args.p:
        kwargs["p_values"] = args.p
    if args.lambdas:
        kwargs["lambdas"] = args.lambdas
    return harness.SweepOptions(**kwargs)


def _describe(report: harness.ClassificationReport) -> str:
    out = [
        f"graph6      {report.graph6}",
        f"n           {report.n}",
        f"alpha       {report.alpha}",
        f"connected   {report.connected}",
        f"I(G;x)      {report.polynomial}",
    ]
    for p, member in sorted(report.wp.items()):
        detail = report.wp_detail.get(p, {})
        extra = ""
        if member is False and detail.get("failing_tuple") is not None:
            extra = f"  failing tuple {detail['failing_tuple']}"
        out.append(f"W_{p:<9} {member}  ({detail.get('method', 'capped')}){extra}")
    for lam, (holds, w) in sorted(report.quasireg.items()):
        line = f"quasireg    lambda={lam}: {holds}"
        if w is not None:
            line += f"  witness {labels(w)} |A|={w.bit_count()}"
            line += f" |N(A)|={open_neighborhood(parse_graph6(report.graph6), w).bit_count()}"
        out.append(line)
    if report.min_expansion is not None:
        ratio, w = report.min_expansion
        out.append(f"min ratio   {ratio} at {labels(w)}")
    out.append(f"n >= 3alpha {report.n >= 3 * report.alpha}")
    out.append(f"local exp.  {report.local_expansion}")
    out.append(f"threshold   {report.threshold_equivalence}")
    fired = sorted({f"{v.name}(p={v.p},lambda={v.lam})" for v in report.criteria
                    if v.name != "direct" and v.fired and v.premises_hold})
    out.append(f"criteria    {', '.join(fired) if fired else 'none fired'}")
    out.append(f"direct      log-concave={report.direct[0]} unimodal={report.direct[1]}")
    out.append(f"violations  {dict(report.violations) if report.violations else 'none'}")
    return "\n".join(out)


def cmd_analyze(args: argparse.Namespace) -> int:
    g = parse_target(args.target)
    report = harness.classify(g, _options(args))
    if args.json:
        print(harness.report_json(report))
    else:
        print(_describe(report))
    if args.figures:
        from .figures import polynomial_figure
        os.makedirs(args.figures, exist_ok=True)
        polynomial_figure(report, os.path.join(args.figures, "polynomial.png"))
    return EXIT_VIOLATION if report.violations else EXIT_OK


def cmd_poly(args: argparse.Namespace) -> int:
    g = parse_target(args.target)
    print(json.dumps(list(independence_polynomial(g))))
    return EXIT_OK


def _records(args: argparse.Namespace, errors: list):
    if args.corpus:
        src = sys.stdin if args.corpus == "-" else args.corpus
        return harness.ingest_corpus(src, strict=args.strict, errors=errors), args.corpus
    orders = [args.gen_n] if args.exact_n else range(1, args.gen_n + 1)
    label = f"labelled{'-connected' if args.connected else ''}-n{'=' if args.exact_n else '<='}{args.gen_n}"
    if args.gen_n > harness.GENERATOR_MAX_N or args.gen_n < 1:
        raise UsageError(f"--gen-n must be between 1 and {harness.GENERATOR_MAX_N}")
    return chain.from_iterable(harness.generated_records(n, args.connected) for n in orders), label


def _run_sweep(args: argparse.Namespace, out_stream=None):
    errors: list = []
    records, label = _records(args, errors)
    points = []
    table_started = [False]

    def on_report(report: harness.ClassificationReport) -> None:
        if out_stream is not None:
            if args.table:
                if not table_started[0]:
                    out_stream.write(harness.TABLE_HEADER + "\n")
                    table_started[0] = True
                out_stream.write(harness.table_row(report) + "\n")
            else:
                out_stream.write(harness.report_json(report) + "\n")
        if report.connected and report.wp.get(2):
            points.append((report.n, report.alpha, report.quasireg[Fraction(2)][0]))

    try:
        summary, _ = harness.sweep(records, _options(args), args.jobs, label, on_report)
    except harness.CorpusError as exc:
        raise UsageError(str(exc)) from exc
    summary.parse_errors = len(errors)
    return summary, points


def _open_out(path: Optional[str]):
    if path is None:
        return None
    if path == "-":
        return sys.stdout
    return open(path, "w", encoding="ascii")


def _print_summary(summary: harness.SweepSummary, stream) -> None:
    stream.write(f"corpus {summary.corpus}: {summary.total} graphs in {summary.wall_time:.2f}s"
                 f" ({summary.parse_errors} parse errors, {summary.caps_hit} capped)\n")
    for key, value in summary.counts.items():
        stream.write(f"  {key:<28} {value}\n")
    for key, value in summary.violations.items():
        stream.write(f"  violations {key:<17} {value}\n")


def cmd_sweep(args: argparse.Namespace) -> int:
    out = _open_out(args.json)
    if out is None and args.table:
        out = sys.stdout
    try:
        summary, points = _run_sweep(args, out)
    finally:
        if out is not None and out is not sys.stdout:
            out.close()
    _print_summary(summary, sys.stderr)
    if args.summary:
        with open(args.summary, "w", encoding="ascii") as fh:
            json.dump(summary.to_dict(), fh, indent=2)
            fh.write("\n")
    if args.figures:
        from .figures import write_sweep_figures
        write_sweep_figures(summary, points, args.figures)
    return summary.exit_code


def _product_suite(pairs: int, seed: int) -> List[str]:
    rng = random.Random(seed)
    problems = []
    for i in range(pairs):
        a = oracles.random_log_concave(rng, rng.randint(1, 12))
        b = oracles.random_log_concave(rng, rng.randint(1, 12))
        for msg in criteria.product_lemma_check(a, b).violations:
            problems.append(f"lc x lc #{i}: {msg}")
        c = oracles.random_unimodal(rng, rng.randint(1, 12))
        for msg in criteria.product_lemma_check(a, c).violations:
            problems.append(f"lc x unimodal #{i}: {msg}")
    return problems


def cmd_verify(args: argparse.Namespace) -> int:
    theorem = args.theorem
    failures = 0
    if theorem == "product-lemma":
        problems = _product_suite(args.pairs, args.seed)
        print(f"product-lemma random suite: {2 * args.pairs} products, {len(problems)} violations")
        failures += len(problems)
    if theorem == "phi-identity":
        mismatches = criteria_identity_mismatches()
        print(f"phi-identity: {len(mismatches)} mismatches")
        return EXIT_VIOLATION if mismatches else EXIT_OK
    if args.corpus or args.gen_n:
        summary, _ = _run_sweep(args)
        key = THEOREM_KEYS[theorem]
        count = summary.violations.get(key, 0)
        print(f"{theorem}: {summary.total} graphs from {summary.corpus}, {count} violations")
        failures += count
    elif theorem != "product-lemma":
        raise UsageError("verify needs --corpus or --gen-n")
    return EXIT_VIOLATION if failures else EXIT_OK


def criteria_identity_mismatches(max_p: int = 5, max_alpha: int = 10, max_n: int = 40) -> list:
    """Tuples where the general criterion at lambda = p differs from the quadratic."""
    bad = []
    for p in range(1, max_p + 1):
        for alpha in range(2, max_alpha + 1):
            for n in range(p * alpha + 1, max_n + 1):
                for k in range(1, alpha):
                    if criteria.phi(p, p, n, alpha, k) != criteria.f_quadratic(p, n, alpha, k):
                        bad.append((p, n, alpha, k))
    return bad


def cmd_construct(args: argparse.Namespace) -> int:
    text = args.corona or args.union or args.expr
    if text is None:
        raise UsageError("construct needs --corona, --union or an expression")
    if args.corona and "*" not in args.corona:
        raise UsageError("--corona expects G*H")
    if args.union and "+" not in args.union:
        raise UsageError("--union expects G+H")
    print(encode_graph6(parse_target(text)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wpgraph", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_pl(p: argparse.ArgumentParser) -> None:
        p.add_argument("--p", type=_int_list, default=None, help="comma list of p values (default 1,2)")
        p.add_argument("--lambda", dest="lambdas", type=_lambda_list, default=None,
                       help="comma list of lambdas, fractions allowed (default 1,3/2,2)")

    def add_corpus(p: argparse.ArgumentParser, required: bool) -> None:
        src = p.add_mutually_exclusive_group(required=required)
        src.add_argument("--corpus", help="newline-delimited graph6 file ('-' for stdin)")
        src.add_argument("--gen-n", type=int, help="all labelled graphs with 1..N vertices (N <= 7)")
        p.add_argument("--exact-n", action="store_true", help="with --gen-n, only order N")
        p.add_argument("--connected", action="store_true", help="with --gen-n, connected graphs only")
        p.add_argument("--strict", action="store_true", help="abort on the first malformed line")
        p.add_argument("--jobs", type=int, default=harness.default_jobs(),
                       help="worker processes (default $WPGRAPH_JOBS or 1)")

    p = sub.add_parser("analyze", help="classify one graph")
    p.add_argument("target", help="graph6 record or family expression such as C5 or K2*K1")
    add_pl(p)
    p.add_argument("--json", action="store_true", help="print the report as one JSON line")
    p.add_argument("--figures", metavar="DIR", help="write a coefficient plot into DIR")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("poly", help="print the independence polynomial coefficients")
    p.add_argument("target")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("sweep", help="classify and audit a corpus")
    add_corpus(p, required=True)
    add_pl(p)
    p.add_argument("--json", metavar="OUT", help="write line-JSON reports to OUT ('-' for stdout)")
    p.add_argument("--table", action="store_true", help="fixed-column table instead of JSON")
    p.add_argument("--summary", metavar="FILE", help="write the sweep summary as JSON")
    p.add_argument("--figures", metavar="DIR", help="write summary figures into DIR")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="check one statement over a corpus")
    p.add_argument("--theorem", required=True, choices=sorted(THEOREM_KEYS) + ["phi-identity"])
    add_corpus(p, required=False)
    add_pl(p)
    p.add_argument("--pairs", type=int, default=1000, help="random pairs for product-lemma")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="emit graph6 for a corona or union")
    p.add_argument("expr", nargs="?", help="any family expression")
    p.add_argument("--corona", metavar="G*H")
    p.add_argument("--union", metavar="G+H")
    p.set_defaults(func=cmd_construct)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, GraphError, constructions.BadSpec) as exc:
        print(f"wpgraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"wpgraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
