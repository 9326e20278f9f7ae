import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import local_graph, named
from wpgraph.constructions import complete, cycle
from wpgraph.graph import (
    ByteOutOfRange, Graph, GraphError, LengthMismatch, NonzeroPadding, NotIndependent,
    OrderTooLarge, closed_neighborhood, connected_components, encode_graph6, is_connected,
    labels, localization, mask_of, open_neighborhood, parse_graph6,
)
from wpgraph.oracles import random_graph


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for j in range(n) for i in range(j)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, chosen) if keep])


class TestGraph6:
    def test_k1(self):
        g = parse_graph6("@")
        assert g.n == 1 and g.edges() == []
        assert encode_graph6(g) == "@"

    def test_k2(self):
        assert parse_graph6("A_") == complete(2)
        assert encode_graph6(complete(2)) == "A_"

    def test_bytes_and_header(self):
        assert parse_graph6(b">>graph6<<A_\n") == complete(2)

    def test_null_graph(self):
        assert parse_graph6("?").n == 0
        assert encode_graph6(Graph(0, ())) == "?"

    @pytest.mark.parametrize("text,exc", [
        ("A", LengthMismatch),
        ("A__", LengthMismatch),
        ("", LengthMismatch),
        ("A ", ByteOutOfRange),
        ("A`", NonzeroPadding),
        ("~~", OrderTooLarge),
    ])
    def test_errors(self, text, exc):
        with pytest.raises(exc):
            parse_graph6(text)

    def test_matches_networkx(self):
        rng = random.Random(11)
        for _ in range(200):
            g = random_graph(rng, rng.randint(1, 20))
            ref = nx.Graph()
            ref.add_nodes_from(range(g.n))
            ref.add_edges_from(g.edges())
            expected = nx.to_graph6_bytes(ref, header=False).strip().decode()
            assert encode_graph6(g) == expected

    @given(graphs(max_n=20))
    @settings(max_examples=150)
    def test_round_trip(self, g):
        text = encode_graph6(g)
        assert parse_graph6(text) == g
        assert encode_graph6(parse_graph6(text)) == text


class TestGraphInvariants:
    def test_asymmetric_rejected(self):
        with pytest.raises(GraphError):
            Graph(2, (0b10, 0))

    def test_loop_rejected(self):
        with pytest.raises(GraphError):
            Graph.from_edges(2, [(1, 1)])

    def test_high_bits_rejected(self):
        with pytest.raises(GraphError):
            Graph(1, (0b10,))

    def test_order_cap(self):
        with pytest.raises(OrderTooLarge):
            Graph.from_edges(63, [])

    @given(graphs())
    def test_symmetric_irreflexive(self, g):
        for u in range(g.n):
            assert not g.adj[u] >> u & 1
            assert g.adj[u] >> g.n == 0
            for v in range(g.n):
                assert (g.adj[u] >> v & 1) == (g.adj[v] >> u & 1)


class TestNeighbourhoods:
    def test_local_example(self):
        g = local_graph()
        a = named("a1", "a2")
        assert open_neighborhood(g, a) == named("u1", "u2", "u3")
        h, index_map = localization(g, a)
        assert [index_map[v] for v in range(h.n)] == [5, 6, 7]
        assert h.edges() == [(0, 1), (1, 2)]

    def test_empty_set(self, c5):
        assert open_neighborhood(c5, 0) == 0
        assert localization(c5, 0)[0] == c5

    def test_c5(self, c5):
        assert labels(open_neighborhood(c5, mask_of([0, 2]))) == [2, 4, 5]
        h, index_map = localization(c5, mask_of([0]))
        assert h == complete(2) and index_map == (2, 3)

    def test_not_independent(self, c5):
        with pytest.raises(NotIndependent):
            localization(c5, mask_of([0, 1]))

    @given(graphs(), st.data())
    def test_closed_contains_open(self, g, data):
        a = data.draw(st.integers(0, (1 << g.n) - 1)) if g.n else 0
        assert closed_neighborhood(g, a) == open_neighborhood(g, a) | a
        assert open_neighborhood(g, a) & a == 0


class TestComponents:
    def test_small(self, c5, k2k2):
        assert is_connected(c5)
        assert not is_connected(k2k2)
        assert is_connected(Graph(1, (0,)))
        comps = connected_components(k2k2)
        assert [c for c, _ in comps] == [complete(2), complete(2)]
        assert [c for c, _ in connected_components(c5)] == [cycle(5)]

    def test_localization_components(self):
        g = local_graph()
        h, index_map = localization(g, named("a1", "a2"))
        comps = connected_components(h)
        assert len(comps) == 1
        assert [index_map[v] for v in comps[0][1]] == [5, 6, 7]

    @given(graphs())
    @settings(max_examples=100)
    def test_against_networkx(self, g):
        ref = nx.Graph()
        ref.add_nodes_from(range(g.n))
        ref.add_edges_from(g.edges())
        expected = sorted(sorted(c) for c in nx.connected_components(ref))
        got = sorted(sorted(m) for _, m in connected_components(g))
        assert got == expected
        if g.n:
            assert is_connected(g) == nx.is_connected(ref)
