"""Corpus ingestion, per-graph classification and the verification sweep.

A sweep classifies every graph of a corpus and runs each audit whose
premises the graph satisfies.  Any audit failure is a *violation*: it would
contradict a proven statement, so a sweep with violations exits with
status 1.
"""

from __future__ import annotations

import io
import json
import logging
import multiprocessing
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import IO, Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from . import criteria
from .enumeration import convolve, independence_polynomial, independent_sets
from .graph import (
    Graph,
    GraphError,
    OrderTooLarge,
    bits,
    component_masks,
    encode_graph6,
    is_connected,
    labels,
    parse_graph6,
)
from .quasireg import NOT_APPLICABLE, check_threshold_equivalence, verify_local_expansion
from .wp import CapExceeded, HasIsolatedVertex, is_one_well_covered, is_well_covered, is_wp, w2_structure_audit

log = logging.getLogger(__name__)

THEOREMS = (
    "local_expansion",
    "threshold",
    "w2_facts",
    "coef_ineq",
    "criteria_soundness",
    "wp_cross_check",
    "polynomial",
    "components",
)

GENERATOR_MAX_N = 7


class CorpusError(Exception):
    def __init__(self, line: int, cause: Exception):
        super().__init__(f"line {line}: {type(cause).__name__}: {cause}")
        self.line = line
        self.cause = cause


@dataclass(frozen=True)
class Graph6Record:
    text: str
    graph: Graph
    line: int = 0


def ingest_corpus(
    source: Union[str, os.PathLike, IO[str]],
    strict: bool = False,
    errors: Optional[List[CorpusError]] = None,
) -> Iterator[Graph6Record]:
    """Yield graph6 records in file order.

    Blank lines are ignored.  A malformed line raises :class:`CorpusError`
    under ``strict``; otherwise it is logged, appended to ``errors`` and
    skipped.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="ascii", errors="replace") as fh:
            yield from ingest_corpus(fh, strict, errors)
        return
    for lineno, raw in enumerate(source, start=1):
        text = raw.strip()
        if not text:
            continue
        try:
            g = parse_graph6(text)
        except GraphError as exc:
            err = CorpusError(lineno, exc)
            if strict:
                raise err from exc
            log.warning("skipping %s", err)
            if errors is not None:
                errors.append(err)
            continue
        if text.startswith(">>graph6<<"):
            text = text[10:]
        yield Graph6Record(text, g, lineno)


def generate_all_graphs(n: int, connected_only: bool = False) -> Iterator[Graph]:
    """All labelled graphs on ``n <= 7`` vertices, without isomorphism reduction.

    Graph number ``m`` has edge ``b`` (graph6 column order
    (0,1), (0,2), (1,2), (0,3), ...) present iff bit ``b`` of ``m`` is set.
    """
    if n > GENERATOR_MAX_N:
        raise OrderTooLarge(f"labelled generation is limited to n <= {GENERATOR_MAX_N}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    half = len(pairs) // 2

    def table(chunk: Sequence[Tuple[int, int]]) -> List[Tuple[int, ...]]:
        out = []
        for m in range(1 << len(chunk)):
            rows = [0] * n
            for b, (i, j) in enumerate(chunk):
                if m >> b & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
            out.append(tuple(rows))
        return out

    low_rows, high_rows = table(pairs[:half]), table(pairs[half:])
    low_mask = (1 << half) - 1
    for m in range(1 << len(pairs)):
        lo, hi = low_rows[m & low_mask], high_rows[m >> half]
        g = Graph._trusted(n, tuple(a | b for a, b in zip(lo, hi)))
        if connected_only and not is_connected(g):
            continue
        yield g


def generated_records(n: int, connected_only: bool = False) -> Iterator[Graph6Record]:
    for i, g in enumerate(generate_all_graphs(n, connected_only), start=1):
        yield Graph6Record(encode_graph6(g), g, i)


def parse_lambda(text: str) -> Fraction:
    lam = Fraction(text.strip())
    if lam <= 0:
        raise ValueError(f"lambda must be positive: {text}")
    return lam


def lambda_key(lam: Fraction) -> str:
    return str(lam)


@dataclass(frozen=True)
class SweepOptions:
    p_values: Tuple[int, ...] = (1, 2)
    lambdas: Tuple[Fraction, ...] = (Fraction(1), Fraction(3, 2), Fraction(2))
    definitional_max_n: int = 12
    fast_path_max_n: int = 14
    max_omega: int = 5000

    def evaluated_lambdas(self) -> Tuple[Fraction, ...]:
        # lambda = p is always evaluated so criteria premises can be verified.
        return tuple(sorted(set(self.lambdas) | {Fraction(p) for p in self.p_values}))


@dataclass
class ClassificationReport:
    index: int
    graph6: str
    n: int
    alpha: int
    connected: bool
    polynomial: List[int]
    wp: Dict[int, Optional[bool]] = field(default_factory=dict)
    wp_detail: Dict[int, dict] = field(default_factory=dict)
    quasireg: Dict[Fraction, Tuple[bool, Optional[int]]] = field(default_factory=dict)
    min_expansion: Optional[Tuple[Fraction, int]] = None
    local_expansion: str = NOT_APPLICABLE
    threshold_equivalence: str = NOT_APPLICABLE
    details: Dict[str, dict] = field(default_factory=dict)
    criteria: List[criteria.CriterionVerdict] = field(default_factory=list)
    direct: Tuple[bool, bool] = (True, True)
    audits: Dict[str, object] = field(default_factory=dict)
    violations: Dict[str, List[object]] = field(default_factory=dict)
    caps: List[str] = field(default_factory=list)

    def violate(self, theorem: str, detail) -> None:
        self.violations.setdefault(theorem, []).append(detail)

    @property
    def clean(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "graph6": self.graph6,
            "n": self.n,
            "alpha": self.alpha,
            "connected": self.connected,
            "polynomial": list(self.polynomial),
            "wp": {str(p): m for p, m in sorted(self.wp.items())},
            "wp_detail": {str(p): d for p, d in sorted(self.wp_detail.items())},
            "quasireg": {
                lambda_key(lam): {"holds": holds, "witness": None if w is None else labels(w)}
                for lam, (holds, w) in sorted(self.quasireg.items())
            },
            "min_expansion_ratio": None if self.min_expansion is None else {
                "value": str(self.min_expansion[0]), "witness": labels(self.min_expansion[1])},
            "local_expansion": self.local_expansion,
            "threshold_equivalence": self.threshold_equivalence,
            "details": self.details,
            "criteria": [v.to_dict() for v in self.criteria],
            "direct": {"log_concave": self.direct[0], "unimodal": self.direct[1]},
            "audits": self.audits,
            "violations": {k: self.violations[k] for k in sorted(self.violations)},
            "caps": list(self.caps),
        }


def _sets(masks: Optional[Sequence[int]]) -> Optional[List[List[int]]]:
    return None if masks is None else [labels(m) for m in masks]


def _classify_wp(g: Graph, report: ClassificationReport, options: SweepOptions,
                 ind: List[int], omega: List[int]) -> None:
    isolate_free = not g.has_isolated_vertex()
    for p in options.p_values:
        detail: dict = {}
        member: Optional[bool] = None
        if g.n <= options.definitional_max_n:
            try:
                w = is_wp(g, p, omega, ind, max_n=options.definitional_max_n, max_omega=options.max_omega)
            except CapExceeded as exc:
                report.caps.append(f"W_{p}: {exc}")
            else:
                member = w.member
                detail = {"method": "definitional", "failing_tuple": _sets(w.failing_tuple),
                          "extension": _sets(w.extension)}
                if p == 1 and is_well_covered(g) != member:
                    report.violate("wp_cross_check", {"p": 1, "definitional": member})
                if p == 2 and isolate_free and is_one_well_covered(g) != member:
                    report.violate("wp_cross_check", {"p": 2, "definitional": member})
        if member is None and p == 1:
            member = is_well_covered(g)
            detail = {"method": "well_covered"}
        elif member is None and p == 2 and g.n <= options.fast_path_max_n:
            try:
                member = is_one_well_covered(g)
                detail = {"method": "one_well_covered"}
            except HasIsolatedVertex:
                member = False
                detail = {"method": "isolated_vertex"}
        elif member is None:
            report.caps.append(f"W_{p}: no method within caps for n={g.n}")
        report.wp[p] = member
        report.wp_detail[p] = detail


def _neighborhood_sizes(g: Graph, ind: Sequence[int]) -> List[int]:
    adj = g.adj
    out = []
    for a in ind:
        nb = 0
        for v in bits(a):
            nb |= adj[v]
        out.append((nb & ~a).bit_count())
    return out


def classify(g: Graph, options: SweepOptions = SweepOptions(), index: int = 0,
             graph6: Optional[str] = None) -> ClassificationReport:
    """Classify one graph and run every audit whose premises hold."""
    ind = list(independent_sets(g))
    alpha = max(a.bit_count() for a in ind)
    omega = [a for a in ind if a.bit_count() == alpha]
    poly = list(independence_polynomial(g))
    connected = is_connected(g)
    report = ClassificationReport(index, graph6 if graph6 is not None else encode_graph6(g),
                                  g.n, alpha, connected, poly)

    counts = [0] * (alpha + 1)
    for a in ind:
        counts[a.bit_count()] += 1
    if counts != poly:
        report.violate("polynomial", {"recursion": poly, "enumeration": counts})

    _classify_wp(g, report, options, ind, omega)

    sizes = _neighborhood_sizes(g, ind)
    for lam in options.evaluated_lambdas():
        num, den = lam.numerator, lam.denominator
        witness = next((a for a, nb in zip(ind, sizes) if a and num * a.bit_count() > den * nb), None)
        report.quasireg[lam] = (witness is None, witness)
    best = None
    for a, nb in zip(ind, sizes):
        if a and (best is None or nb * best[1].bit_count() < best[0] * a.bit_count()):
            best = (nb, a)
    if best is not None:
        report.min_expansion = (Fraction(best[0], best[1].bit_count()), best[1])

    w2 = report.wp.get(2)
    if connected and w2:
        le = verify_local_expansion(g, connected=True, w2=True, ind=ind, alpha=alpha)
        th = check_threshold_equivalence(g, connected=True, w2=True, ind=ind, alpha=alpha)
        report.local_expansion, report.threshold_equivalence = le.status, th.status
        report.details["local_expansion"] = le.to_dict()
        report.details["threshold_equivalence"] = th.to_dict()
        if le.violations:
            report.violate("local_expansion", [w.to_dict() for w in le.violations])
        if th.status != "pass":
            report.violate("threshold", th.to_dict())

    if w2:
        audit = w2_structure_audit(g, omega, ind, max_n=max(options.definitional_max_n, g.n))
        report.audits["w2_facts"] = {"facts": audit.facts, "witnesses": audit.witnesses}
        if not audit.passed:
            report.violate("w2_facts", audit.witnesses)

    _coefficient_audits(report, options)
    _component_audit(g, report, poly)

    verdicts = criteria.unified_verdict(
        connected, {p: m for p, m in report.wp.items() if m is not None}, g.n, alpha, poly,
        {lam: holds for lam, (holds, _) in report.quasireg.items()})
    report.criteria = verdicts
    direct = verdicts[-1].detail
    report.direct = (direct["log_concave"], direct["unimodal"])
    _criteria_soundness(report, poly)
    return report


def _coefficient_audits(report: ClassificationReport, options: SweepOptions) -> None:
    n, alpha, poly = report.n, report.alpha, report.polynomial
    upper, lower = {}, {}
    for lam, (holds, _) in sorted(report.quasireg.items()):
        if not holds:
            continue
        res = criteria.coefficient_inequality_audit(n, alpha, poly, 1, lam, True, False, False).upper
        upper[lambda_key(lam)] = res.to_dict()
        if res.violations:
            report.violate("coef_ineq", {"chain": "upper", "lambda": lambda_key(lam), "k": res.violations})
    for p, member in sorted(report.wp.items()):
        res = criteria.coefficient_inequality_audit(
            n, alpha, poly, p, 1, False, report.connected, bool(member)).lower
        lower[str(p)] = res.to_dict()
        if res.violations:
            report.violate("coef_ineq", {"chain": "lower", "p": p, "k": res.violations})
    report.audits["coef_upper"] = upper
    report.audits["coef_lower"] = lower


def _component_audit(g: Graph, report: ClassificationReport, poly: List[int]) -> None:
    comps = component_masks(g)
    if len(comps) < 2:
        return
    polys = [list(independence_polynomial(g.induced(m)[0])) for m in comps]
    product = [1]
    for q in polys:
        product = convolve(product, q)
    lcs = [criteria.is_log_concave(q) for q in polys]
    unis = [criteria.is_unimodal(q) for q in polys]
    result = {"count": len(comps), "multiplicative": product == poly}
    if product != poly:
        report.violate("components", {"product": product, "polynomial": poly})
    if all(lcs) and not criteria.is_log_concave(poly):
        report.violate("components", "all components log-concave but the graph is not")
    if all(unis) and sum(not x for x in lcs) <= 1 and not criteria.is_unimodal(poly):
        report.violate("components", "component unimodality did not carry over")
    for (i, q), (j, r) in combinations(enumerate(polys), 2):
        for msg in criteria.product_lemma_check(q, r).violations:
            report.violate("components", {"pair": [i, j], "product_lemma": msg})
    report.audits["components"] = result


def _criteria_soundness(report: ClassificationReport, poly: List[int]) -> None:
    for v in criteria.soundness_failures(report.criteria):
        report.violate("criteria_soundness", v.to_dict())
    for v in report.criteria:
        if v.name.startswith("interval_form") and v.fired and any(val < 0 for _, val in v.per_k):
            report.violate("criteria_soundness", {"interval_form_negative_quadratic": v.to_dict()})
        if v.name != "unimodality_LR" or not v.premises_hold:
            continue
        if v.premises.get("quasireg_verified") is not True:
            continue
        low, high = v.detail["L"], v.detail["R"]
        rise = poly[:min(low + 1, report.alpha) + 1]
        fall = poly[max(high, 0):]
        if any(x > y for x, y in zip(rise, rise[1:])) or any(x < y for x, y in zip(fall, fall[1:])):
            report.violate("criteria_soundness", {"chains": v.to_dict()})


# Sweep -----------------------------------------------------------------------


@dataclass
class SweepSummary:
    corpus: str
    total: int = 0
    counts: Dict[str, int] = field(default_factory=lambda: {
        "connected": 0, "well_covered": 0, "w2": 0, "connected_w2": 0,
        "connected_w2_quasireg2": 0, "connected_w2_n_ge_3alpha": 0,
        "log_concave": 0, "unimodal": 0})
    violations: Dict[str, int] = field(default_factory=lambda: {t: 0 for t in THEOREMS})
    violating_graphs: List[str] = field(default_factory=list)
    caps_hit: int = 0
    parse_errors: int = 0
    wall_time: float = 0.0

    def add(self, report: ClassificationReport) -> None:
        self.total += 1
        c = self.counts
        c["connected"] += report.connected
        c["well_covered"] += bool(report.wp.get(1))
        c["w2"] += bool(report.wp.get(2))
        c["log_concave"] += report.direct[0]
        c["unimodal"] += report.direct[1]
        if report.connected and report.wp.get(2):
            c["connected_w2"] += 1
            holds = report.quasireg.get(Fraction(2), (False, None))[0]
            c["connected_w2_quasireg2"] += holds
            c["connected_w2_n_ge_3alpha"] += report.n >= 3 * report.alpha
        for theorem, items in report.violations.items():
            self.violations[theorem] = self.violations.get(theorem, 0) + len(items)
        if report.violations:
            self.violating_graphs.append(report.graph6)
        self.caps_hit += bool(report.caps)

    @property
    def total_violations(self) -> int:
        return sum(self.violations.values())

    @property
    def exit_code(self) -> int:
        return 1 if self.total_violations else 0

    def to_dict(self) -> dict:
        return {
            "corpus": self.corpus,
            "total": self.total,
            "counts": dict(self.counts),
            "violations": dict(self.violations),
            "violating_graphs": self.violating_graphs[:20],
            "caps_hit": self.caps_hit,
            "parse_errors": self.parse_errors,
            "wall_time": round(self.wall_time, 3),
        }


_worker_options: Optional[SweepOptions] = None


def _init_worker(options: SweepOptions) -> None:
    global _worker_options
    _worker_options = options


def _work(item: Tuple[int, str, Graph]) -> ClassificationReport:
    index, text, g = item
    return classify(g, _worker_options, index, text)


def iter_reports(
    records: Iterable[Graph6Record], options: SweepOptions = SweepOptions(), jobs: int = 1,
    chunksize: int = 64,
) -> Iterator[ClassificationReport]:
    """Classify records in input order, optionally on a process pool."""
    items = ((i, r.text, r.graph) for i, r in enumerate(records))
    if jobs <= 1:
        for i, text, g in items:
            yield classify(g, options, i, text)
        return
    with multiprocessing.get_context("fork").Pool(jobs, _init_worker, (options,)) as pool:
        # imap keeps input order, so output is independent of the pool width.
        yield from pool.imap(_work, items, chunksize)


def sweep(
    records: Iterable[Graph6Record],
    options: SweepOptions = SweepOptions(),
    jobs: int = 1,
    corpus: str = "",
    on_report: Optional[Callable[[ClassificationReport], None]] = None,
    keep: bool = False,
) -> Tuple[SweepSummary, List[ClassificationReport]]:
    """Run the full audit over a corpus; returns the summary and, with ``keep``, the reports."""
    summary = SweepSummary(corpus)
    kept: List[ClassificationReport] = []
    start = time.perf_counter()
    for report in iter_reports(records, options, jobs):
        summary.add(report)
        if on_report is not None:
            on_report(report)
        if keep:
            kept.append(report)
    summary.wall_time = time.perf_counter() - start
    return summary, kept


# Output ----------------------------------------------------------------------


def report_json(report: ClassificationReport) -> str:
    return json.dumps(report.to_dict(), separators=(",", ":"))


def _witness_text(vertices: Optional[List[int]], limit: int = 8) -> str:
    if vertices is None:
        return "-"
    if len(vertices) > limit:
        shown = ",".join(map(str, vertices[:limit]))
        return f"{{{shown},...}}(+{len(vertices) - limit})"
    return "{" + ",".join(map(str, vertices)) + "}"


def _flag(value: Optional[bool]) -> str:
    return "?" if value is None else "Y" if value else "N"


TABLE_HEADER = "{:>6} {:<14} {:>3} {:>3} {:>4} {:>3} {:>3} {:<12} {:<14} {:<14} {:>3} {:>3}  {}".format(
    "#", "graph6", "n", "a", "conn", "W1", "W2", "quasireg", "local_exp", "threshold", "LC", "UNI", "witness")


def table_row(report: ClassificationReport) -> str:
    qr = "".join(_flag(h) for _, (h, _) in sorted(report.quasireg.items()))
    first_bad = next((w for _, (h, w) in sorted(report.quasireg.items()) if not h), None)
    g6 = report.graph6 if len(report.graph6) <= 14 else report.graph6[:13] + "~"
    return "{:>6} {:<14} {:>3} {:>3} {:>4} {:>3} {:>3} {:<12} {:<14} {:<14} {:>3} {:>3}  {}".format(
        report.index, g6, report.n, report.alpha, _flag(report.connected),
        _flag(report.wp.get(1)), _flag(report.wp.get(2)), qr, report.local_expansion,
        report.threshold_equivalence, _flag(report.direct[0]), _flag(report.direct[1]),
        _witness_text(None if first_bad is None else labels(first_bad)))


def report_emit(reports: Iterable[ClassificationReport], fmt: str = "json",
                out: Optional[IO[str]] = None) -> str:
    """Write reports as line-delimited JSON or a fixed-column table.

    Returns the text when ``out`` is None.
    """
    buf = io.StringIO() if out is None else out
    first = True
    for report in reports:
        if fmt == "json":
            buf.write(report_json(report) + "\n")
        elif fmt == "table":
            if first:
                buf.write(TABLE_HEADER + "\n")
            buf.write(table_row(report) + "\n")
        else:
            raise ValueError(f"unknown format {fmt!r}")
        first = False
    return buf.getvalue() if out is None else ""


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("WPGRAPH_JOBS", "1")))
    except ValueError:
        return 1

