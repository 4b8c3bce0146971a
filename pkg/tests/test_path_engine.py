"""Shortest-path queries, similarity scoring and algorithm equivalence."""

import random

import pytest

from macskit import (
    AlgoChoice,
    DegeneratePairError,
    InvalidConceptError,
    PathEngine,
    build_graph,
    conceptual_similarity,
    directed_distance,
    shortest_path,
)

from conftest import TABLE3_EXPECTED
from oracles import OracleDigraph, random_digraph

ALGOS = list(AlgoChoice)


class TestShortestPath:
    def test_quoted_two_hop_path(self, ex1_graph):
        result = shortest_path(
            ex1_graph,
            ex1_graph.id_of("attack"),
            ex1_graph.id_of("airport"),
            want_nodes=True,
        )
        assert result.hops == 2
        assert result.nodes == ("attack", "terrorist", "airport")

    def test_no_path(self, table3_graph):
        result = shortest_path(
            table3_graph, table3_graph.id_of("blast"), table3_graph.id_of("bomb")
        )
        assert not result.is_finite
        assert result.hops is None

    def test_self_distance_zero(self, ex1_graph):
        node = ex1_graph.id_of("attack")
        result = shortest_path(ex1_graph, node, node)
        assert result.hops == 0

    def test_unknown_id(self, ex1_graph):
        with pytest.raises(InvalidConceptError):
            shortest_path(ex1_graph, 0, ex1_graph.node_count + 5)

    def test_witness_length_matches_hops(self, ex1_graph):
        for algo in ALGOS:
            result = shortest_path(
                ex1_graph,
                ex1_graph.id_of("airport"),
                ex1_graph.id_of("flower"),
                algo,
                want_nodes=True,
            )
            assert result.hops == 3
            assert len(result.nodes) == result.hops + 1

    def test_witness_is_a_real_path(self):
        rng = random.Random(23)
        for _ in range(15):
            assertions, edges = random_digraph(rng, max_nodes=25)
            graph = build_graph(assertions)
            edge_set = {(a, b) for a, b in edges}
            nodes = list(range(graph.node_count))
            for algo in ALGOS:
                for _ in range(10):
                    s, t = rng.choice(nodes), rng.choice(nodes)
                    result = shortest_path(graph, s, t, algo, want_nodes=True)
                    if not result.is_finite:
                        continue
                    assert len(result.nodes) == result.hops + 1
                    for a, b in zip(result.nodes, result.nodes[1:]):
                        assert (a, b) in edge_set

    def test_deterministic_witness_per_algo(self, ex1_graph):
        for algo in ALGOS:
            first = shortest_path(
                ex1_graph,
                ex1_graph.id_of("flower"),
                ex1_graph.id_of("attack"),
                algo,
                want_nodes=True,
            )
            second = shortest_path(
                ex1_graph,
                ex1_graph.id_of("flower"),
                ex1_graph.id_of("attack"),
                algo,
                want_nodes=True,
            )
            assert first == second


class TestDirectedDistance:
    def test_no_path_default(self, table3_graph):
        assert directed_distance(table3_graph, "airline", "pen") == 4.0

    def test_direct_edge(self, table3_graph):
        assert directed_distance(table3_graph, "tree", "branch") == 1.0

    def test_oov_totalized_and_flagged(self, table3_graph):
        engine = PathEngine(table3_graph)
        assert engine.directed_distance("tree", "zeppelin") == 4.0
        assert "zeppelin" in engine.oov_terms

    def test_configurable_default(self, table3_graph):
        engine = PathEngine(table3_graph, nopath_default=7.0)
        assert engine.directed_distance("airline", "pen") == 7.0

    def test_invalid_default_rejected(self, table3_graph):
        with pytest.raises(ValueError):
            PathEngine(table3_graph, nopath_default=0)

    def test_clamping_bounds(self):
        # Distinct in-graph concepts: effective distance is >= 1 and only
        # reaches the default on no-path; longer finite paths not clamped.
        rng = random.Random(31)
        for _ in range(10):
            assertions, edges = random_digraph(rng, max_nodes=30)
            graph = build_graph(assertions)
            engine = PathEngine(graph, nopath_default=2.0)
            oracle = OracleDigraph(edges)
            for s in graph.surfaces[:10]:
                for t in graph.surfaces[:10]:
                    if s == t:
                        continue
                    value = engine.directed_distance(s, t)
                    hops = oracle.hops(s, t)
                    if hops is None:
                        assert value == 2.0
                    else:
                        assert value == float(hops) >= 1.0


class TestConceptualSimilarity:
    def test_reference_pairs_all_algorithms(self, table3_graph):
        engine = PathEngine(table3_graph)
        for a, b, a_to_b, b_to_a, mean in TABLE3_EXPECTED:
            for algo in ALGOS:
                score = engine.conceptual_similarity(a, b, algo)
                assert score.a_to_b == a_to_b
                assert score.b_to_a == b_to_a
                assert score.value == mean

    def test_example1_pair(self, ex1_graph):
        score = conceptual_similarity(ex1_graph, "airport", "flower")
        assert score.a_to_b == 3.0 and score.b_to_a == 3.0 and score.value == 3.0

    def test_symmetry(self, table3_graph, ex1_graph):
        for graph in (table3_graph, ex1_graph):
            engine = PathEngine(graph)
            surfaces = graph.surfaces
            for a in surfaces[:8]:
                for b in surfaces[:8]:
                    if a == b:
                        continue
                    assert (
                        engine.conceptual_similarity(a, b).value
                        == engine.conceptual_similarity(b, a).value
                    )

    def test_degenerate_pair(self, ex1_graph):
        engine = PathEngine(ex1_graph)
        with pytest.raises(DegeneratePairError):
            engine.conceptual_similarity("attack", "Attack")
        with pytest.raises(DegeneratePairError):
            engine.conceptual_similarity("zzz", " ZZZ ")

    def test_oov_reported(self, ex1_graph):
        score = conceptual_similarity(ex1_graph, "attack", "zeppelin")
        assert score.oov == ("zeppelin",)
        assert score.value == 4.0


class TestAlgorithmEquivalence:
    def test_small_scale_against_oracle(self):
        """All three algorithms agree with an independent BFS everywhere."""
        rng = random.Random(47)
        for _ in range(25):
            assertions, edges = random_digraph(rng, max_nodes=25)
            graph = build_graph(assertions)
            oracle = OracleDigraph(edges)
            engine = PathEngine(graph)
            for s in graph.surfaces:
                expected = {t: oracle.hops(s, t) for t in graph.surfaces}
                s_id = graph.id_of(s)
                for algo in ALGOS:
                    dist = engine.distances_from(s_id, algo)
                    for t in graph.surfaces:
                        got = dist.get(graph.id_of(t))
                        assert got == expected[t], (s, t, algo)

    def test_triangle_sanity(self):
        rng = random.Random(53)
        for _ in range(8):
            assertions, _ = random_digraph(rng, max_nodes=20)
            graph = build_graph(assertions)
            engine = PathEngine(graph)
            n = graph.node_count
            maps = {v: engine.distances_from(v, AlgoChoice.BFS) for v in range(n)}
            for s in range(n):
                for m in range(n):
                    via = maps[s].get(m)
                    if via is None:
                        continue
                    for t, onward in maps[m].items():
                        direct = maps[s].get(t)
                        assert direct is not None and direct <= via + onward


class TestMemoization:
    def test_distance_maps_cached(self, ex1_graph):
        engine = PathEngine(ex1_graph)
        node = ex1_graph.id_of("attack")
        first = engine.distances_from(node, AlgoChoice.DIJKSTRA)
        second = engine.distances_from(node, AlgoChoice.DIJKSTRA)
        assert first is second

    def test_cache_keyed_by_algo(self, ex1_graph):
        engine = PathEngine(ex1_graph)
        node = ex1_graph.id_of("attack")
        bfs = engine.distances_from(node, AlgoChoice.BFS)
        dijkstra = engine.distances_from(node, AlgoChoice.DIJKSTRA)
        assert bfs is not dijkstra
        assert bfs == dijkstra
