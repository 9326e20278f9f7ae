"""End-to-end acceptance checks, one test per criterion.

Each test records a ``criterion N: PASS|FAIL ...`` line that is printed in the
terminal summary.  Set ``WPGRAPH_EXTERNAL_CORPUS`` to a graph6 file of all
connected graphs up to 9 vertices (for instance ``geng -c``) to include it in
criteria 3 to 6.
"""

import os
import random
import subprocess
import sys
import time
from itertools import chain

import pytest

from conftest import ACCEPTANCE_LINES, LOCAL_NAMES, local_graph, named
from wpgraph import criteria
from wpgraph.cli import criteria_identity_mismatches, main
from wpgraph.constructions import cycle
from wpgraph.enumeration import independence_polynomial
from wpgraph.graph import connected_components, encode_graph6, labels, localization
from wpgraph.graph import open_neighborhood, parse_graph6
from wpgraph.harness import SweepOptions, classify, generate_all_graphs, generated_records
from wpgraph.harness import ingest_corpus, sweep
from wpgraph.oracles import random_graph, random_log_concave, random_unimodal, subset_polynomial
from wpgraph.wp import is_one_well_covered, is_wp

EXTERNAL = os.environ.get("WPGRAPH_EXTERNAL_CORPUS")


def record(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="module")
def sweeps():
    """Summaries for the built-in n <= 6 corpus and, if supplied, the external one."""
    out = {}
    builtin = chain.from_iterable(generated_records(n, True) for n in range(1, 7))
    summary, _ = sweep(builtin, corpus="labelled connected n<=6")
    out["builtin"] = summary
    if EXTERNAL:
        summary, _ = sweep(ingest_corpus(EXTERNAL, strict=True), corpus=EXTERNAL)
        out["external"] = summary
    return out


def _sweep_criterion(number, sweeps, theorems, extra=""):
    parts = []
    ok = True
    for name, s in sweeps.items():
        count = sum(s.violations[t] for t in theorems)
        ok &= count == 0 and s.caps_hit == 0
        parts.append(f"{name}: {s.total} graphs, {s.counts['connected_w2']} connected W_2, "
                     f"{count} violations, {s.wall_time:.1f}s")
    if "external" not in sweeps:
        parts.append("external corpus not supplied")
    record(number, ok, "; ".join(parts) + extra)
    return ok


def test_criterion_01_c5_golden():
    start = time.perf_counter()
    rep = classify(cycle(5))
    elapsed = time.perf_counter() - start
    holds2, w = rep.quasireg[2]
    ok = (rep.n == 5 and rep.alpha == 2 and rep.connected and rep.wp[1] is True
          and rep.wp[2] is True and rep.quasireg[1][0] is True and holds2 is False
          and w.bit_count() == 2 and open_neighborhood(cycle(5), w).bit_count() == 3
          and rep.n < 3 * rep.alpha and elapsed < 1.0 and not rep.violations)
    record(1, ok, f"C5 n={rep.n} alpha={rep.alpha} W1={rep.wp[1]} W2={rep.wp[2]} "
                  f"1-qr={rep.quasireg[1][0]} 2-qr={holds2} witness={labels(w)} ({elapsed:.3f}s)")
    assert ok
    assert main(["analyze", "C5"]) == 0


def test_criterion_02_localization_golden():
    g = local_graph()
    a = named("a1", "a2")
    nb = open_neighborhood(g, a)
    h, index_map = localization(g, a)
    ok = (nb == named("u1", "u2", "u3") and [index_map[v] for v in range(h.n)] == [5, 6, 7]
          and h.edges() == [(0, 1), (1, 2)] and len(connected_components(h)) == 1)
    names = [LOCAL_NAMES[v - 1] for v in labels(nb)]
    path = [(LOCAL_NAMES[index_map[u]], LOCAL_NAMES[index_map[v]]) for u, v in h.edges()]
    record(2, ok, f"N(A)={names} localization edges={path}")
    assert ok


def test_criterion_03_local_expansion(sweeps):
    assert _sweep_criterion(3, sweeps, ["local_expansion"])
    assert sweeps["builtin"].wall_time <= 60


def test_criterion_04_threshold(sweeps):
    assert _sweep_criterion(4, sweeps, ["threshold"])


def test_criterion_05_lemma_audits(sweeps):
    assert _sweep_criterion(5, sweeps, ["w2_facts", "coef_ineq"])


def test_criterion_06_criteria_soundness(sweeps):
    assert _sweep_criterion(6, sweeps, ["criteria_soundness"])


def test_criterion_07_identity():
    start = time.perf_counter()
    bad = criteria_identity_mismatches(5, 10, 40)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 1.0
    record(7, ok, f"{len(bad)} mismatches over p<=5, alpha<=10, n<=40 ({elapsed:.3f}s)")
    assert ok


def test_criterion_08_product_lemma():
    rng = random.Random(20261019)
    lc_bad = uni_bad = 0
    for _ in range(1000):
        a = random_log_concave(rng, rng.randint(1, 15))
        b = random_log_concave(rng, rng.randint(1, 15))
        lc_bad += not criteria.product_lemma_check(a, b).product_log_concave
    for _ in range(1000):
        a = random_log_concave(rng, rng.randint(1, 15))
        c = random_unimodal(rng, rng.randint(1, 15))
        uni_bad += not criteria.product_lemma_check(a, c).product_unimodal
    ok = lc_bad == 0 and uni_bad == 0
    record(8, ok, f"LCxLC 1000 pairs {lc_bad} violations; LCxunimodal 1000 pairs {uni_bad} violations")
    assert ok


def test_criterion_09_oracles():
    rng = random.Random(9)
    poly_bad = 0
    for _ in range(500):
        g = random_graph(rng, rng.randint(1, 14))
        poly_bad += list(independence_polynomial(g)) != subset_polynomial(g)
    wp_bad = checked = 0
    start = time.perf_counter()
    for n in range(2, 8):
        for g in generate_all_graphs(n):
            if g.has_isolated_vertex():
                continue
            checked += 1
            wp_bad += is_wp(g, 2).member != is_one_well_covered(g)
    wp_time = time.perf_counter() - start
    g6_bad = 0
    for _ in range(500):
        g = random_graph(rng, rng.randint(1, 20))
        text = encode_graph6(g)
        g6_bad += parse_graph6(text) != g or encode_graph6(parse_graph6(text)) != text
    ok = poly_bad == wp_bad == g6_bad == 0
    record(9, ok, f"polynomial {poly_bad}/500 mismatches; W_2 vs 1-well-covered {wp_bad}/{checked} "
                  f"isolate-free graphs n<=7 ({wp_time:.0f}s); graph6 {g6_bad}/500")
    assert ok


def test_criterion_10_determinism(tmp_path):
    outs = []
    for jobs in ("1", "8"):
        out = tmp_path / f"jobs{jobs}.jsonl"
        res = subprocess.run([sys.executable, "-m", "wpgraph", "sweep", "--gen-n", "6", "--connected",
                              "--jobs", jobs, "--json", str(out)], capture_output=True, text=True)
        assert res.returncode == 0, res.stderr
        outs.append(out.read_bytes())
    ok = outs[0] == outs[1] and len(outs[0]) > 0
    lines = outs[0].count(b"\n")
    record(10, ok, f"jobs 1 vs 8 on labelled connected n<=6: {lines} lines, "
                   f"{'identical' if ok else 'different'}")
    assert ok
