from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from coarsepath.errors import InvalidK, NotConnected, NotSimple, ParseError
from coarsepath.families import complete_graph, cycle_graph, ladder, path_graph, spider, star_graph
from coarsepath.graph import (
    Graph,
    all_pairs_distances,
    connected_avoiding,
    disk,
    load_graph,
    parse_edgelist,
    parse_graph6,
    power,
    to_edgelist,
    to_graph6,
)
from oracles import distances, to_nx
from strategies import connected_graphs


class TestLoading:
    def test_single_vertex_graph6(self):
        g = load_graph("@")
        assert (g.n, g.m) == (1, 0)

    def test_single_edge_graph6(self):
        g = load_graph("A_")
        assert (g.n, g.edges) == (2, ((0, 1),))

    def test_triangle_edgelist(self):
        g = load_graph("0 1\n1 2\n2 0", "edgelist")
        assert g == complete_graph(3)

    def test_header_is_accepted(self):
        assert parse_graph6(">>graph6<<A_") == path_graph(2)

    def test_disconnected_rejected(self):
        with pytest.raises(NotConnected):
            load_graph("A?")

    def test_loop_rejected(self):
        with pytest.raises(NotSimple):
            load_graph("0 0\n", "edgelist")

    def test_repeated_edge_rejected(self):
        with pytest.raises(NotSimple):
            load_graph("0 1\n1 0\n", "edgelist")

    @pytest.mark.parametrize("text", ["", "zz", "A", "A_?", ":Fa@x^", "B~", "Bx"])
    def test_malformed_graph6(self, text):
        with pytest.raises(ParseError):
            parse_graph6(text)

    def test_nonzero_padding_rejected(self):
        # n = 2 uses one data bit; the five padding bits must be zero
        with pytest.raises(ParseError):
            parse_graph6("A`")

    @pytest.mark.parametrize("text", ["0 1 2\n", "0 x\n", "-1 0\n", "# only comments\n"])
    def test_malformed_edgelist(self, text):
        with pytest.raises(ParseError):
            parse_edgelist(text)

    def test_edgelist_comments_and_isolated_declaration(self):
        g = parse_edgelist("# a comment\n0 1  # trailing\n\n1 2\n")
        assert g == path_graph(3)
        assert parse_edgelist("0\n") == Graph(1, [])

    def test_edgelist_round_trip(self):
        for g in (Graph(1, []), cycle_graph(5), spider(3, 2)):
            assert parse_edgelist(to_edgelist(g)) == g

    def test_long_size_field(self):
        g = path_graph(70)
        text = to_graph6(g)
        assert text[0] == "~"
        assert parse_graph6(text) == g
        assert text == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()


class TestGraph6Reference:
    @given(connected_graphs(max_n=12))
    def test_matches_networkx_encoder(self, g):
        expected = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
        assert to_graph6(g) == expected
        assert parse_graph6(expected) == g

    def test_corpus_round_trip(self, corpus7):
        for g in corpus7:
            assert parse_graph6(to_graph6(g)) == g


class TestDistances:
    def test_examples(self):
        assert all_pairs_distances(cycle_graph(6))[0][3] == 3
        k5 = all_pairs_distances(complete_graph(5))
        assert all(k5[u][v] == 1 for u in range(5) for v in range(5) if u != v)
        assert all_pairs_distances(path_graph(4))[0][3] == 3

    @given(connected_graphs(max_n=10))
    def test_agrees_with_networkx(self, g):
        ref = distances(g)
        assert all(g.dist[u][v] == ref[u][v] for u in range(g.n) for v in range(g.n))

    @given(connected_graphs(max_n=9))
    def test_metric_axioms(self, g):
        d = g.dist
        for u in range(g.n):
            assert d[u][u] == 0
            for v in range(g.n):
                assert d[u][v] == d[v][u]
                assert (d[u][v] == 1) == g.has_edge(u, v)
                for w in range(g.n):
                    assert d[u][w] <= d[u][v] + d[v][w]


class TestPowers:
    def test_examples(self):
        assert power(cycle_graph(6), 3) == complete_graph(6)
        c6 = cycle_graph(6)
        assert power(c6, 1) is c6
        sq = power(c6, 2)
        assert sq.m == 12 and all(len(a) == 4 for a in sq.adjacency)

    def test_invalid_k(self):
        with pytest.raises(InvalidK):
            power(path_graph(3), 0)

    @given(connected_graphs(max_n=9), st.integers(1, 5))
    def test_monotone_and_complete_at_diameter(self, g, k):
        small, big = set(power(g, k).edges), set(power(g, k + 1).edges)
        assert small <= big
        if g.n > 1:
            assert power(g, g.diameter).m == g.n * (g.n - 1) // 2


class TestDisks:
    def test_examples(self):
        c6 = cycle_graph(6)
        assert disk(c6, 0, 1) == {5, 0, 1}
        assert disk(c6, 4, 0) == {4}
        assert disk(c6, 0, 3) == set(range(6))
        assert disk(c6, 0, 10) == set(range(6))

    @given(connected_graphs(max_n=9), st.integers(0, 6))
    def test_nesting_and_definition(self, g, r):
        for s in range(g.n):
            d = disk(g, s, r)
            assert d <= disk(g, s, r + 1)
            assert d == {v for v in range(g.n) if g.dist[s][v] <= r}
            assert len(disk(g, s, 0)) == 1


class TestConnectedAvoiding:
    def test_examples(self):
        c6 = cycle_graph(6)
        assert connected_avoiding(c6, 1, 5, {0})
        assert not connected_avoiding(c6, 1, 5, {0, 3})
        assert not connected_avoiding(c6, 1, 5, {1})

    @given(connected_graphs(max_n=8), st.data())
    def test_agrees_with_networkx(self, g, data):
        removed = data.draw(st.sets(st.integers(0, g.n - 1)))
        a = data.draw(st.integers(0, g.n - 1))
        b = data.draw(st.integers(0, g.n - 1))
        h = to_nx(g).subgraph(set(range(g.n)) - removed)
        expected = a not in removed and b not in removed and nx.has_path(h, a, b)
        assert connected_avoiding(g, a, b, removed) == expected


class TestFamilies:
    def test_shapes(self):
        assert star_graph(3).adjacency[0] == (1, 2, 3)
        assert ladder(4).m == 10
        s = spider(3, 4)
        assert s.n == 13 and s.dist[4][8] == 8
        assert cycle_graph(8).diameter == 4
