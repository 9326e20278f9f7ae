import random
from itertools import product

import pytest
from hypothesis import given, settings

from test_graph import graphs
from wpgraph.constructions import complete, corona, cycle, disjoint_union, path
from wpgraph.enumeration import independent_sets, maximum_independent_sets
from wpgraph.graph import Graph, labels, mask_of
from wpgraph.harness import generate_all_graphs
from wpgraph.oracles import random_graph, subset_maximal_sizes
from wpgraph.wp import (
    AMaximum, BadTuple, CapExceeded, HasIsolatedVertex, avoidance_check, disjoint_extension,
    is_one_well_covered, is_well_covered, is_wp, w2_structure_audit,
)


def brute_wp(g, p):
    """Literal reading of the definition over all tuples."""
    if g.n < p:
        return False
    ind = list(independent_sets(g))
    omega = maximum_independent_sets(g)
    for sets in product(ind, repeat=p):
        if any(sets[i] & sets[j] for i in range(p) for j in range(i)):
            continue
        ok = False
        for choice in product(omega, repeat=p):
            if any(choice[i] & choice[j] for i in range(p) for j in range(i)):
                continue
            if all(not a & ~s for a, s in zip(sets, choice)):
                ok = True
                break
        if not ok:
            return False
    return True


def brute_extensions(g, sets):
    omega = maximum_independent_sets(g)
    p = len(sets)
    return [c for c in product(omega, repeat=p)
            if all(not c[i] & c[j] for i in range(p) for j in range(i))
            and all(not a & ~s for a, s in zip(sets, c))]


def m(*vs):
    return mask_of(v - 1 for v in vs)


class TestDisjointExtension:
    def test_c5_lex_first(self, c5):
        ext = disjoint_extension(c5, [m(1), m(2)])
        assert [labels(s) for s in ext] == [[1, 3], [2, 4]]
        # Another valid answer, later in Omega order.
        assert (m(1, 3), m(2, 5)) in brute_extensions(c5, [m(1), m(2)])

    def test_c4_absent(self, c4):
        assert disjoint_extension(c4, [m(1), m(3)]) is None

    def test_k2_empty_tuple(self, k2):
        assert disjoint_extension(k2, [0, 0]) == (1, 2)

    def test_bad_tuples(self, c5):
        with pytest.raises(BadTuple):
            disjoint_extension(c5, [m(1), m(1, 3)])
        with pytest.raises(BadTuple):
            disjoint_extension(c5, [m(1, 2)])

    @given(graphs(max_n=7))
    @settings(max_examples=60)
    def test_matches_brute_force(self, g):
        ind = list(independent_sets(g))
        rng = random.Random(g.n)
        for _ in range(10):
            a1, a2 = rng.choice(ind), rng.choice(ind)
            if a1 & a2:
                continue
            sols = brute_extensions(g, [a1, a2])
            got = disjoint_extension(g, [a1, a2])
            assert (got is None) == (not sols)
            if got is not None:
                assert got in sols


class TestIsWp:
    def test_examples(self, c5, c4, p3):
        assert is_wp(c5, 2).member
        w = is_wp(c4, 2)
        assert w.verdict == "non_member"
        assert [labels(a) for a in w.failing_tuple] == [[1], [3]]
        assert not is_wp(p3, 1)

    def test_member_has_extension(self, c5):
        w = is_wp(c5, 2)
        s1, s2 = w.extension
        assert not s1 & s2 and s1.bit_count() == s2.bit_count() == 2

    def test_too_small(self):
        w = is_wp(Graph(1, (0,)), 2)
        assert not w.member and w.failing_tuple == (0, 0)

    def test_caps(self):
        with pytest.raises(CapExceeded):
            is_wp(cycle(15), 2)
        with pytest.raises(CapExceeded):
            is_wp(disjoint_union([complete(2)] * 6), 1, max_omega=10)

    def test_families(self):
        assert is_wp(complete(4), 3).member
        assert not is_wp(complete(4), 5).member
        assert is_wp(cycle(7), 1).member
        assert not is_wp(cycle(7), 2).member
        assert not is_wp(path(4), 2).member
        assert is_wp(path(4), 1).member

    def test_against_definition_small(self):
        for n in range(1, 6):
            for g in generate_all_graphs(n):
                for p in (1, 2, 3):
                    w = is_wp(g, p)
                    assert w.member == brute_wp(g, p), (g, p)
                    if not w.member and g.n >= p:
                        assert not brute_extensions(g, list(w.failing_tuple))

    @given(graphs(max_n=7))
    @settings(max_examples=80)
    def test_w1_is_well_covered(self, g):
        if g.n == 0:
            return
        assert is_wp(g, 1).member == is_well_covered(g)
        assert is_well_covered(g) == (len(subset_maximal_sizes(g)) == 1)

    @given(graphs(max_n=8))
    @settings(max_examples=80)
    def test_nested(self, g):
        if g.n >= 3 and is_wp(g, 3).member:
            assert is_wp(g, 2).member
        if g.n >= 2 and is_wp(g, 2).member:
            assert is_wp(g, 1).member

    def test_w2_is_one_well_covered_up_to_6(self):
        for n in range(2, 7):
            for g in generate_all_graphs(n):
                if not g.has_isolated_vertex():
                    assert is_wp(g, 2).member == is_one_well_covered(g)


class TestWellCovered:
    def test_examples(self, c4, p3, c5, k2):
        assert is_well_covered(c4)
        assert not is_well_covered(p3)
        assert is_well_covered(Graph(1, (0,)))
        assert is_one_well_covered(c5)
        assert not is_one_well_covered(c4)
        assert is_one_well_covered(k2)

    def test_isolated_vertex(self):
        with pytest.raises(HasIsolatedVertex):
            is_one_well_covered(disjoint_union([Graph(1, (0,)), complete(2)]))


class TestAvoidance:
    def test_examples(self, c5, c4):
        assert labels(avoidance_check(c5, m(1), 2)) == [1, 4]
        assert avoidance_check(c4, m(1), 2) is None
        assert labels(avoidance_check(c5, 0, 0)) == [2, 4]

    def test_errors(self, c5):
        with pytest.raises(AMaximum):
            avoidance_check(c5, m(1, 3), 1)
        with pytest.raises(ValueError):
            avoidance_check(c5, m(1), 0)


class TestW2Audit:
    def test_c5(self, c5):
        audit = w2_structure_audit(c5)
        assert audit.passed and set(audit.facts) == {
            "no_isolated", "localization", "components", "avoidance", "leafless"}

    def test_k2(self, k2):
        assert w2_structure_audit(k2).passed

    def test_isolated_vertex_blocks_membership(self):
        g = disjoint_union([Graph(1, (0,)), complete(2)])
        assert not is_wp(g, 2).member
        assert not w2_structure_audit(g).facts["no_isolated"]

    def test_leaf_detected_on_non_member(self):
        audit = w2_structure_audit(corona(path(3), Graph(1, (0,))))
        assert not audit.facts["leafless"]

    def test_all_w2_up_to_6(self):
        count = 0
        for n in range(2, 7):
            for g in generate_all_graphs(n):
                if is_wp(g, 2).member:
                    count += 1
                    audit = w2_structure_audit(g)
                    assert audit.passed, (g, audit.witnesses)
        assert count > 0
