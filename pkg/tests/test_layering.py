from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coarsepath.decomposition import exact_path_length, is_valid, metrics
from coarsepath.errors import DistortionExceeded, TooLarge
from coarsepath.families import complete_graph, cycle_graph, path_graph, spider, star_graph
from coarsepath.graph import Graph
from coarsepath.layering import (
    Caterpillar,
    approx_adc,
    best_extended_layering,
    canonical_caterpillar,
    caterpillar_from_sequence,
    decomposition_from_caterpillar,
    distortion,
    enumerate_caterpillars,
    exact_adc,
    extended_layering,
    layering,
    min_layering_length,
)
from oracles import brute_adc, brute_layer_parameters, connected_atlas
from strategies import connected_graphs

STAR4 = Caterpillar((0,), {1: 0, 2: 0, 3: 0, 4: 0})


class TestLayering:
    def test_hexagon_layers(self):
        lay = layering(cycle_graph(6), 0)
        assert lay.layers == tuple(map(frozenset, ({0}, {1, 5}, {2, 4}, {3})))
        assert lay.length == 2

    def test_clique_and_path(self):
        assert layering(complete_graph(5), 0).length == 1
        assert layering(path_graph(4), 0).length == 0

    def test_extended_hexagon(self):
        pd, delta_s, rho_s = extended_layering(cycle_graph(6), 0)
        assert pd.bags[0] == {0, 1, 5}
        assert (delta_s, rho_s) == (3, 2)
        assert is_valid(cycle_graph(6), pd)

    def test_extended_examples(self):
        assert best_extended_layering(cycle_graph(6))[:2] == (3, 2)
        assert best_extended_layering(complete_graph(5))[:2] == (1, 1)
        assert best_extended_layering(path_graph(4))[:2] == (1, 1)

    def test_single_vertex(self):
        pd, d, r = extended_layering(Graph(1, []), 0)
        assert pd.bags == (frozenset([0]),) and (d, r) == (0, 0)

    def test_matches_definition_on_small_corpus(self, corpus7):
        for g in corpus7:
            assert best_extended_layering(g)[:2] == brute_layer_parameters(g)

    @given(connected_graphs(max_n=9), st.data())
    def test_extended_layering_is_valid_and_sandwiched(self, g, data):
        s = data.draw(st.integers(0, g.n - 1))
        pd, delta_s, rho_s = extended_layering(g, s)
        lay = layering(g, s)
        assert is_valid(g, pd)
        assert lay.length <= delta_s <= lay.length + 1
        assert lay.breadth <= rho_s

    @given(connected_graphs(max_n=9))
    def test_layering_partitions_by_distance(self, g):
        lay = layering(g, 0)
        for i, layer in enumerate(lay.layers):
            assert all(g.dist[0][v] == i for v in layer)
        assert sum(len(layer) for layer in lay.layers) == g.n


class TestCaterpillar:
    def test_rejects_malformed(self):
        with pytest.raises(ValueError):
            Caterpillar((0, 0))
        with pytest.raises(ValueError):
            Caterpillar((0, 1), {1: 0})
        with pytest.raises(ValueError):
            Caterpillar((0,), {2: 0})
        with pytest.raises(ValueError):
            Caterpillar((0,), {1: 2, 2: 0})

    def test_tree_distances(self):
        t = Caterpillar((0, 1, 2), {3: 0, 4: 2})
        assert t.distance(3, 4) == 4
        assert t.distance(3, 0) == 1
        assert t.distance(1, 1) == 0
        assert t.as_graph().dist[3][4] == 4

    @given(st.integers(1, 5), st.data())
    def test_distance_matches_tree_graph(self, n, data):
        spine_len = data.draw(st.integers(1, n))
        order = data.draw(st.permutations(range(n)))
        spine = tuple(order[:spine_len])
        attach = {v: data.draw(st.sampled_from(spine)) for v in order[spine_len:]}
        t = Caterpillar(spine, attach)
        h = t.as_graph()
        assert h.m == n - 1
        assert all(t.distance(u, v) == h.dist[u][v] for u in range(n) for v in range(n))

    def test_json_round_trip(self):
        t = Caterpillar((2, 0), {1: 2})
        assert t.to_json() == {"spine": [2, 0], "attach": {"1": 2}}
        assert Caterpillar.from_json(t.to_json()) == t
        assert caterpillar_from_sequence([2, 0], {1: 2}) == t


class TestCanonicalCaterpillar:
    def test_hexagon_from_zero(self):
        t = canonical_caterpillar(cycle_graph(6), 0)
        assert t.spine == (0, 1, 2, 3)
        assert t.attach == {4: 1, 5: 0}
        assert distortion(cycle_graph(6), t) == 2

    def test_path_is_its_own_caterpillar(self):
        t = canonical_caterpillar(path_graph(4), 0)
        assert t.spine == (0, 1, 2, 3) and not t.attach
        assert distortion(path_graph(4), t) == 0

    def test_star_from_center(self):
        t = canonical_caterpillar(star_graph(3), 0)
        assert t.as_graph() == star_graph(3)

    def test_clique(self):
        assert distortion(complete_graph(5), canonical_caterpillar(complete_graph(5), 0)) == 1

    def test_distortion_of_caterpillar_graph_is_zero(self):
        t = Caterpillar((0, 1, 2), {3: 1, 4: 2})
        assert distortion(t.as_graph(), t) == 0

    def test_distortion_size_mismatch(self):
        with pytest.raises(ValueError):
            distortion(path_graph(3), Caterpillar((0, 1)))

    @given(connected_graphs(max_n=10), st.data())
    def test_sandwich(self, g, data):
        s = data.draw(st.integers(0, g.n - 1))
        t = canonical_caterpillar(g, s)
        length = layering(g, s).length
        for u in range(g.n):
            for v in range(g.n):
                dh = t.distance(u, v)
                assert dh - 2 <= g.dist[u][v] <= dh + length

    @given(connected_graphs(max_n=10), st.data())
    def test_spine_is_a_geodesic_from_the_start(self, g, data):
        s = data.draw(st.integers(0, g.n - 1))
        t = canonical_caterpillar(g, s)
        assert t.spine[0] == s
        assert all(g.dist[s][x] == i for i, x in enumerate(t.spine))
        for u, anchor in t.attach.items():
            assert t.spine.index(anchor) == g.dist[s][u] - 1


class TestApproximation:
    def test_examples(self):
        assert approx_adc(path_graph(4))[1] == 0
        assert approx_adc(cycle_graph(6))[1] == 2
        assert approx_adc(complete_graph(5))[1] == 1

    @given(connected_graphs(max_n=9))
    def test_measured_value_is_reported(self, g):
        t, k = approx_adc(g)
        assert distortion(g, t) == k
        assert k <= max(2, min_layering_length(g))


class TestExactAdc:
    def test_examples(self):
        assert exact_adc(Caterpillar((0, 1, 2), {3: 1}).as_graph())[0] == 0
        assert exact_adc(complete_graph(5))[0] == 1
        assert exact_adc(cycle_graph(6))[0] == 2

    def test_cap(self):
        with pytest.raises(TooLarge):
            exact_adc(path_graph(8))

    def test_witness_attains_value(self, corpus6):
        for g in corpus6:
            k, t = exact_adc(g)
            assert distortion(g, t) == k

    def test_matches_caterpillar_enumeration(self):
        for g in connected_atlas(6):
            best = min(distortion(g, t) for t in enumerate_caterpillars(g.n))
            assert exact_adc(g)[0] == best

    def test_matches_pruefer_enumeration(self):
        for g in connected_atlas(5):
            assert exact_adc(g)[0] == brute_adc(g)

    def test_bounded_by_every_layering(self, corpus7):
        for g in corpus7:
            assert exact_adc(g)[0] <= min_layering_length(g)


class TestDecompositionFromCaterpillar:
    def test_path_uses_its_edges(self):
        g = path_graph(4)
        pd = decomposition_from_caterpillar(g, Caterpillar((0, 1, 2, 3)), 0)
        assert pd.bags == tuple(map(frozenset, ({0, 1}, {1, 2}, {2, 3})))

    def test_hexagon_canonical(self):
        g = cycle_graph(6)
        pd = decomposition_from_caterpillar(g, canonical_caterpillar(g, 0), 2)
        assert metrics(g, pd).length <= 5

    def test_star_squared_is_one_bag(self):
        pd = decomposition_from_caterpillar(complete_graph(5), STAR4, 1)
        assert pd.bags == (frozenset(range(5)),)

    def test_rejects_small_k(self):
        with pytest.raises(DistortionExceeded):
            decomposition_from_caterpillar(cycle_graph(6), canonical_caterpillar(cycle_graph(6), 0), 1)

    @given(connected_graphs(max_n=10), st.data())
    def test_length_and_cliques(self, g, data):
        t = canonical_caterpillar(g, data.draw(st.integers(0, g.n - 1)))
        k = distortion(g, t) + data.draw(st.integers(0, 2))
        pd = decomposition_from_caterpillar(g, t, k)
        assert is_valid(g, pd)
        assert metrics(g, pd).length <= 2 * k + 1
        for bag in pd.bags:
            assert all(t.distance(u, v) <= k + 1 for u in bag for v in bag)

    def test_path_length_bound_on_corpus(self, corpus6):
        for g in corpus6:
            k, t = exact_adc(g)
            assert exact_path_length(g)[0] <= metrics(g, decomposition_from_caterpillar(g, t, k)).length

    def test_spider(self):
        g = spider(3, 2)
        t, k = approx_adc(g)
        assert metrics(g, decomposition_from_caterpillar(g, t, k)).length <= 2 * k + 1
