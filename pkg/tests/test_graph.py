import math
import random

import pytest

from entiscope.annotate import EntityType
from entiscope.graph import (
    CoocGraph,
    GraphError,
    betweenness,
    build_graph,
    force_atlas,
    louvain,
    modularity,
    prune_edges,
)
from oracles import (
    brute_betweenness,
    brute_cooccurrence_weights,
    brute_modularity,
    set_partitions,
)
from synth import (
    barbell_graph,
    graph_from_edges,
    mention,
    random_cooccurrence_corpus,
    random_graph,
    singleton_clusters,
)


class TestBuildGraph:
    def test_single_sentence_pair(self):
        clusters = singleton_clusters(["A", "B"])
        mentions = [mention("A", EntityType.ORGANIZATION, sentence=0),
                    mention("B", EntityType.ORGANIZATION, sentence=0)]
        g = build_graph(clusters, mentions)
        assert g.edges() == [("n0", "n1", 1)]

    def test_pair_counted_once_per_sentence(self):
        clusters = singleton_clusters(["A", "B"])
        mentions = [mention("A", EntityType.ORGANIZATION, sentence=0),
                    mention("A", EntityType.ORGANIZATION, sentence=0),
                    mention("B", EntityType.ORGANIZATION, sentence=0)]
        g = build_graph(clusters, mentions)
        assert g.edges() == [("n0", "n1", 1)]

    def test_three_sentences_weight_three(self):
        clusters = singleton_clusters(["Fabrice Tourre", "Goldman Sachs"])
        mentions = []
        for s in range(3):
            mentions.append(mention("Fabrice Tourre", EntityType.ORGANIZATION, sentence=s))
            mentions.append(mention("Goldman Sachs", EntityType.ORGANIZATION, sentence=s))
        g = build_graph(clusters, mentions)
        assert g.edges() == [("n0", "n1", 3)]

    def test_unmapped_mention_rejected(self):
        clusters = singleton_clusters(["A"])
        with pytest.raises(GraphError, match="maps to no cluster"):
            build_graph(clusters, [mention("Z", EntityType.ORGANIZATION)])

    def test_clusters_without_mentions_get_no_node(self):
        clusters = singleton_clusters(["A", "B", "C"])
        mentions = [mention("A", EntityType.ORGANIZATION, sentence=0)]
        g = build_graph(clusters, mentions)
        assert g.node_count == 1

    def test_weights_match_brute_force_recount(self):
        for seed in range(20):
            rng = random.Random(seed)
            clusters, mentions, memberships = random_cooccurrence_corpus(rng)
            g = build_graph(clusters, mentions)
            expected = brute_cooccurrence_weights(memberships)
            got = {}
            for u, v, w in g.edges():
                got[(int(g.labels[u][6:]), int(g.labels[v][6:]))] = w
            assert got == expected

    def test_prune_edges(self):
        g = graph_from_edges(3, [(0, 1, 5), (1, 2, 1)])
        pruned = prune_edges(g, min_weight=2)
        assert pruned.edges() == [("n0", "n1", 5)]
        assert pruned.node_count == 3


class TestBetweenness:
    def test_path_graph(self):
        g = graph_from_edges(3, [(0, 1, 1), (1, 2, 1)])
        bc = betweenness(g)
        assert bc == {"n0": 0.0, "n1": 1.0, "n2": 0.0}

    def test_complete_graph_all_zero(self):
        edges = [(u, v, 1) for u in range(4) for v in range(u + 1, 4)]
        bc = betweenness(graph_from_edges(4, edges))
        assert all(v == 0.0 for v in bc.values())

    def test_leaves_of_tree_are_zero(self):
        # Star: center on every shortest path between leaves.
        g = graph_from_edges(5, [(0, i, 1) for i in range(1, 5)])
        bc = betweenness(g)
        assert bc["n0"] == 1.0
        assert all(bc[f"n{i}"] == 0.0 for i in range(1, 5))

    def test_matches_brute_force_on_random_graphs(self):
        for seed in range(12):
            rng = random.Random(seed)
            g = random_graph(rng, rng.randint(2, 20), 0.3)
            expected = brute_betweenness(g)
            got = betweenness(g)
            for v in g.node_ids:
                assert got[v] == pytest.approx(expected[v], abs=1e-9)

    def test_tree_leaves_have_zero_betweenness(self):
        for seed in range(6):
            rng = random.Random(seed)
            n = rng.randint(3, 14)
            # Random tree: attach each node to an earlier one.
            edges = [(rng.randint(0, i - 1), i, 1) for i in range(1, n)]
            g = graph_from_edges(n, edges)
            bc = betweenness(g)
            for v in g.node_ids:
                if g.degree(v) == 1:
                    assert bc[v] == 0.0

    def test_empty_graph(self):
        assert betweenness(CoocGraph()) == {}


class TestModularity:
    def test_two_disconnected_edges(self):
        g = graph_from_edges(4, [(0, 1, 1), (2, 3, 1)])
        part = {"n0": 0, "n1": 0, "n2": 1, "n3": 1}
        assert modularity(g, part) == pytest.approx(0.5)
        assert brute_modularity(g, part) == pytest.approx(0.5)

    def test_empty_graph_is_zero(self):
        g = CoocGraph()
        g.add_node("n0", "a")
        assert modularity(g, {"n0": 0}) == 0.0

    def test_single_community_closed_form(self):
        for seed in range(6):
            rng = random.Random(seed)
            g = random_graph(rng, 8, 0.5, max_weight=4)
            if g.total_weight() == 0:
                continue
            part = {v: 0 for v in g.node_ids}
            m2 = 2.0 * g.total_weight()
            closed = 1.0 - sum(g.weighted_degree(v) for v in g.node_ids) ** 2 / m2**2
            # Single community: intra weight is everything.
            assert modularity(g, part) == pytest.approx(closed)

    def test_matches_brute_force_on_random_partitions(self):
        for seed in range(10):
            rng = random.Random(seed)
            g = random_graph(rng, rng.randint(2, 10), 0.4, max_weight=3)
            part = {v: rng.randint(0, 2) for v in g.node_ids}
            assert modularity(g, part) == pytest.approx(brute_modularity(g, part), abs=1e-12)

    def test_bounded_range(self):
        for seed in range(10):
            rng = random.Random(seed)
            g = random_graph(rng, 7, 0.5, max_weight=3)
            part = {v: rng.randint(0, 6) for v in g.node_ids}
            assert -0.5 <= modularity(g, part) <= 1.0

    def test_partial_partition_rejected(self):
        g = graph_from_edges(2, [(0, 1, 1)])
        with pytest.raises(GraphError):
            modularity(g, {"n0": 0})


class TestLouvain:
    def test_barbell_recovers_cliques(self):
        g, expected = barbell_graph(5)
        part = louvain(g, seed=0)
        groups = {}
        for v, c in part.items():
            groups.setdefault(c, set()).add(v)
        assert {frozenset(s) for s in groups.values()} == expected

    def test_barbell_is_restricted_brute_force_optimum(self):
        g, expected = barbell_graph(5)
        best_q, best_part = float("-inf"), None
        for part in set_partitions(list(g.node_ids)):
            if len(part) > 3:
                continue
            assignment = {v: i for i, block in enumerate(part) for v in block}
            q = brute_modularity(g, assignment)
            if q > best_q:
                best_q, best_part = q, part
        assert {frozenset(b) for b in best_part} == expected
        assert modularity(g, louvain(g, seed=0)) == pytest.approx(best_q)

    def test_edgeless_graph_all_singletons(self):
        g = CoocGraph()
        for i in range(4):
            g.add_node(f"n{i}", "x")
        part = louvain(g, seed=3)
        assert sorted(part.values()) == [0, 1, 2, 3]

    def test_single_edge_one_community(self):
        # Both partitions enumerated: together Q=0, apart Q=-0.5.
        g = graph_from_edges(2, [(0, 1, 1)])
        together = brute_modularity(g, {"n0": 0, "n1": 0})
        apart = brute_modularity(g, {"n0": 0, "n1": 1})
        assert together > apart
        part = louvain(g, seed=0)
        assert part["n0"] == part["n1"]

    def test_never_below_singletons(self):
        for seed in range(10):
            rng = random.Random(seed)
            g = random_graph(rng, rng.randint(2, 16), 0.3, max_weight=3)
            part = louvain(g, seed=seed)
            singles = {v: i for i, v in enumerate(g.node_ids)}
            assert modularity(g, part) >= modularity(g, singles) - 1e-12

    def test_sweep_trace_is_monotone(self):
        for seed in range(6):
            rng = random.Random(seed)
            g = random_graph(rng, 14, 0.3, max_weight=2)
            trace: list[float] = []
            louvain(g, seed=seed, trace=trace)
            for a, b in zip(trace, trace[1:]):
                assert b >= a - 1e-9

    def test_deterministic_for_fixed_seed(self):
        rng = random.Random(5)
        g = random_graph(rng, 20, 0.25, max_weight=3)
        assert louvain(g, seed=11) == louvain(g, seed=11)

    def test_weighted_graph_dominant_weights_win(self):
        # Two heavy pairs joined by light edges.
        g = graph_from_edges(4, [(0, 1, 10), (2, 3, 10), (1, 2, 1), (0, 3, 1)])
        part = louvain(g, seed=0)
        assert part["n0"] == part["n1"]
        assert part["n2"] == part["n3"]
        assert part["n0"] != part["n2"]


class TestForceAtlas:
    def test_zero_iterations_is_seeded_initialization(self):
        g = graph_from_edges(3, [(0, 1, 1)])
        layout = force_atlas(g, seed=9, iterations=0)
        rng = random.Random(9)
        expected = {
            v: (rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0))
            for v in g.node_ids
        }
        assert layout.positions == expected

    def test_deterministic(self):
        rng = random.Random(2)
        g = random_graph(rng, 12, 0.3)
        a = force_atlas(g, seed=4, iterations=40)
        b = force_atlas(g, seed=4, iterations=40)
        assert a.positions == b.positions

    def test_components_separate(self):
        # Two triangles with no inter-component edges: only repulsion acts
        # between them, so their centroids drift apart.
        edges = [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1)]
        g = graph_from_edges(6, edges)
        start = force_atlas(g, seed=1, iterations=0).positions
        end = force_atlas(g, seed=1, iterations=60).positions

        def centroid(pos, ids):
            xs = [pos[i][0] for i in ids]
            ys = [pos[i][1] for i in ids]
            return sum(xs) / len(xs), sum(ys) / len(ys)

        left, right = ["n0", "n1", "n2"], ["n3", "n4", "n5"]

        def dist(pos):
            (x1, y1), (x2, y2) = centroid(pos, left), centroid(pos, right)
            return math.hypot(x1 - x2, y1 - y2)

        assert dist(end) > dist(start)

    def test_coordinates_finite(self):
        rng = random.Random(8)
        g = random_graph(rng, 15, 0.4, max_weight=5)
        layout = force_atlas(g, seed=8, iterations=80)
        for x, y in layout.positions.values():
            assert math.isfinite(x) and math.isfinite(y)

    def test_negative_iterations_rejected(self):
        with pytest.raises(GraphError):
            force_atlas(CoocGraph(), seed=0, iterations=-1)
