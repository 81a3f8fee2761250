import math

import numpy as np
import pytest

from heronet.graph import (Graph, build_graph, canonical_edge, complement,
                           components, distance_profile, drop_isolated,
                           edge_betweenness, global_efficiency,
                           induced_subgraph, structural_metrics,
                           subgraph_with_edges)


def path(n):
    return build_graph([(i, i + 1) for i in range(n - 1)])


def star(leaves):
    return build_graph([(0, i) for i in range(1, leaves + 1)])


class TestBuildGraph:
    def test_sorts_nodes_and_edges(self):
        g = build_graph([(3, 1), (2, 1)])
        assert g.node_ids == (1, 2, 3)
        assert g.edges == ((1, 2, 1.0), (1, 3, 1.0))

    def test_parallel_edges_aggregate(self):
        g = build_graph([(0, 1, 2.0), (1, 0, 3.0)])
        assert g.edges == ((0, 1, 5.0),)

    def test_default_weight_is_one(self):
        g = build_graph([(0, 1)])
        assert g.edges[0][2] == 1.0

    def test_isolated_nodes_kept(self):
        g = build_graph([(0, 1)], node_weights={5: 2}, extra_nodes=[9])
        assert g.node_ids == (0, 1, 5, 9)
        assert g.node_weights == (0, 0, 2, 0)

    def test_winners_iterable_and_mapping(self):
        g1 = build_graph([(0, 1)], winners=[1])
        assert g1.winners == (False, True)
        g2 = build_graph([(0, 1)], winners={0: True, 1: False})
        assert g2.winners == (True, False)

    def test_mixed_id_types_sort_ints_first(self):
        g = build_graph([("b", 2), (1, "a")])
        assert g.node_ids == (1, 2, "a", "b")

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError, match="self-loop"):
            build_graph([(1, 1)])

    def test_bad_weight_rejected(self):
        with pytest.raises(ValueError, match="weight"):
            build_graph([(0, 1, 0.0)])
        with pytest.raises(ValueError, match="weight"):
            build_graph([(0, 1, -2.0)])
        with pytest.raises(ValueError, match="weight"):
            build_graph([(0, 1, float("nan"))])

    def test_bad_ids_rejected(self):
        with pytest.raises(ValueError):
            build_graph([(True, 1)])
        with pytest.raises(ValueError):
            build_graph([("", 1)])
        with pytest.raises(ValueError):
            build_graph([(0.5, 1)])

    def test_negative_node_weight_rejected(self):
        with pytest.raises(ValueError, match="nonnegative"):
            build_graph([(0, 1)], node_weights={0: -1})


class TestDerivedArrays:
    def test_degrees_and_strengths(self):
        g = build_graph([(0, 1, 2.0), (0, 2, 3.0)])
        assert list(g.degrees) == [2, 1, 1]
        assert list(g.strengths) == [5.0, 2.0, 3.0]

    def test_adjacency_is_binary_symmetric(self):
        g = build_graph([(0, 1, 7.0)])
        a = g.adjacency
        assert a[0, 1] == a[1, 0] == 1.0
        assert np.allclose(a, g.adjacency_csr.toarray())

    def test_hop_distances_path(self):
        g = path(4)
        d = g.hop_distances
        assert d[0, 3] == 3.0
        assert d[1, 2] == 1.0
        assert np.all(np.diag(d) == 0.0)

    def test_hop_distances_disconnected(self):
        g = build_graph([(0, 1)], extra_nodes=[2])
        assert math.isinf(g.hop_distances[0, 2])

    def test_canonical_edge(self):
        assert canonical_edge(2, 1) == (1, 2)
        assert canonical_edge("b", "a") == ("a", "b")
        assert canonical_edge("a", 10) == (10, "a")


class TestSubgraphs:
    def test_subgraph_with_edges_keeps_vertex_set(self):
        g = path(4)
        sub = subgraph_with_edges(g, [(1, 2)])
        assert sub.node_ids == g.node_ids
        assert sub.edges == ((1, 2, 1.0),)

    def test_subgraph_with_edges_rejects_stray(self):
        with pytest.raises(ValueError, match="not in graph"):
            subgraph_with_edges(path(3), [(0, 2)])

    def test_induced_subgraph(self):
        g = path(4)
        sub = induced_subgraph(g, {1, 2, 3})
        assert sub.node_ids == (1, 2, 3)
        assert sub.edges == ((1, 2, 1.0), (2, 3, 1.0))

    def test_drop_isolated(self):
        g = build_graph([(0, 1)], extra_nodes=[7])
        assert drop_isolated(g).node_ids == (0, 1)

    def test_complement_of_path3(self):
        g = complement(path(3))
        assert g.edges == ((0, 2, 1.0),)

    def test_complement_involution_edge_count(self):
        g = build_graph([(0, 1), (2, 3), (1, 2)])
        full = g.n * (g.n - 1) // 2
        assert complement(g).m == full - g.m


class TestDistanceProfile:
    def test_star_rows(self):
        prof = distance_profile(star(3))
        # hub sees all 3 at distance 1, each leaf sees 1 near + 2 far
        assert np.allclose(prof.per_node[0], [1.0, 0.0, 0.0, 0.0])
        assert np.allclose(prof.per_node[1], [1 / 3, 2 / 3, 0.0, 0.0])
        assert np.allclose(prof.mu, [0.5, 0.5, 0.0, 0.0])
        assert prof.diameter == 2

    def test_star_nnd_frozen(self):
        # JSD of rows 0.2157615543388356 over log(3)
        assert distance_profile(star(3)).nnd == pytest.approx(
            0.19639463035718616, rel=1e-12)

    def test_rows_sum_to_one_with_unreachable_mass(self):
        g = build_graph([(0, 1), (2, 3)])
        prof = distance_profile(g)
        assert np.allclose(prof.per_node.sum(axis=1), 1.0)
        # two of three alters unreachable from each node
        assert np.allclose(prof.per_node[:, -1], 2 / 3)

    def test_complete_graph_nnd_zero(self):
        g = build_graph([(i, j) for i in range(5) for j in range(i + 1, 5)])
        prof = distance_profile(g)
        assert prof.nnd == 0.0
        assert prof.diameter == 1

    def test_needs_two_nodes(self):
        with pytest.raises(ValueError, match="at least 2"):
            distance_profile(build_graph([], extra_nodes=[0]))

    def test_random_rows_always_normalized(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            n = int(rng.integers(2, 12))
            edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                     if rng.random() < 0.3]
            g = build_graph(edges, extra_nodes=range(n))
            prof = distance_profile(g)
            assert np.allclose(prof.per_node.sum(axis=1), 1.0)
            assert 0.0 <= prof.nnd <= 1.0


class TestMetrics:
    def test_global_efficiency_path3(self):
        assert global_efficiency(path(3)) == pytest.approx(5 / 6)

    def test_global_efficiency_complete(self):
        g = build_graph([(i, j) for i in range(4) for j in range(i + 1, 4)])
        assert global_efficiency(g) == pytest.approx(1.0)

    def test_global_efficiency_trivial(self):
        assert global_efficiency(build_graph([], extra_nodes=[0])) == 0.0

    def test_edge_betweenness_path3(self):
        # each edge carries its endpoint pair plus the end-to-end pair
        bet = edge_betweenness(path(3))
        assert bet == {(0, 1): 2.0, (1, 2): 2.0}

    def test_structural_metrics_two_triangles(self):
        g = build_graph([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        m = structural_metrics(g, communities=[{0, 1, 2}, {3, 4, 5}])
        assert m.mean_clustering == pytest.approx(1.0)
        assert m.modularity == pytest.approx(0.5)
        assert m.degree_sequence == (2, 2, 2, 2, 2, 2)
        assert structural_metrics(g).modularity is None

    def test_components_sorted_by_size_then_id(self):
        g = build_graph([(5, 6), (0, 1), (1, 2)], extra_nodes=[9])
        comps = components(g)
        assert comps[0] == frozenset({0, 1, 2})
        assert comps[1] == frozenset({5, 6})
        assert comps[2] == frozenset({9})

    def test_winner_ids(self):
        g = build_graph([(0, 1)], winners=[0])
        assert g.winner_ids() == frozenset({0})
