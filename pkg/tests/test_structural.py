"""Linear-time solvers, segment machinery, and the block decomposition."""

from __future__ import annotations

import random

import pytest

from powerdom import exact, structural
from powerdom import propagation as prop
from powerdom.decomposition import blocks, classify_cut_vertices, cycle_order, recognize
from powerdom.errors import GraphClassError
from powerdom.graphs import Graph, complete_graph, cycle_graph, path_graph

from conftest import (
    bowtie,
    double_star,
    random_block_graph,
    random_cactus,
    random_connected_with_cut_vertex,
    random_tree,
    spider_three_legs,
    two_triangles_bridge,
)


def k4_with_pendant_path() -> Graph:
    g = complete_graph(4)
    return Graph(
        list(g.labels) + ["p1", "p2", "p3"],
        list(g.edges()) + [(0, 4), (4, 5), (5, 6)],
    )


class TestTree:
    def test_long_path(self):
        assert structural.tree_cpds(path_graph(9)).optimum == 1

    def test_double_star(self):
        result = structural.tree_cpds(double_star())
        assert result.optimum == 2 and result.witness == (0, 1)

    def test_spider(self):
        result = structural.tree_cpds(spider_three_legs())
        assert result.witness == (0,)

    def test_rejects_non_tree(self):
        with pytest.raises(GraphClassError):
            structural.tree_cpds(cycle_graph(4))

    def test_oracle_agreement_and_uniqueness(self):
        rng = random.Random(11)
        for _ in range(50):
            g = random_tree(rng, rng.randint(2, 12))
            fast = structural.tree_cpds(g)
            slow = exact.min_cpds(g, seeded=False, all_optima=True)
            assert fast.optimum == slow.optimum
            if not recognize(g).path:
                assert slow.all_optima == (fast.witness,)  # unique optimum


class TestTreeEquality:
    def test_paths(self):
        assert structural.tree_pd_equals_cpd(path_graph(7))

    def test_double_star_true(self):
        assert structural.tree_pd_equals_cpd(double_star())

    def test_spider_true(self):
        assert structural.tree_pd_equals_cpd(spider_three_legs())

    def test_joined_double_stars_false(self):
        # centers with two leaves each, joined through a bare middle vertex
        g = Graph(
            ["c1", "mid", "c2", "l1", "l2", "l3", "l4"],
            [(0, 1), (1, 2), (0, 3), (0, 4), (2, 5), (2, 6)],
        )
        assert not structural.tree_pd_equals_cpd(g)
        assert exact.min_pds(g).optimum < exact.min_cpds(g).optimum

    def test_characterization_matches_oracles(self):
        rng = random.Random(13)
        for _ in range(60):
            g = random_tree(rng, rng.randint(2, 11))
            same = exact.min_pds(g).optimum == exact.min_cpds(g).optimum
            assert structural.tree_pd_equals_cpd(g) == same


class TestBlockGraph:
    def test_two_triangles_bridge(self):
        g = two_triangles_bridge()
        result = structural.block_graph_cpds(g)
        assert result.optimum == 2
        assert result.witness == (2, 3)

    def test_k4_with_pendant_path(self):
        result = structural.block_graph_cpds(k4_with_pendant_path())
        assert result.optimum == 1
        assert result.witness == (0,)

    def test_bowtie(self):
        result = structural.block_graph_cpds(bowtie())
        assert result.optimum == 1 and result.witness == (0,)

    def test_rejects_non_block_graph(self):
        with pytest.raises(GraphClassError):
            structural.block_graph_cpds(cycle_graph(5))

    def test_oracle_agreement(self):
        rng = random.Random(17)
        for _ in range(50):
            g = random_block_graph(rng, rng.randint(2, 13))
            fast = structural.block_graph_cpds(g)
            assert fast.optimum == exact.min_cpds(g).optimum


class TestSegments:
    def _families(self, g):
        taxonomy = classify_cut_vertices(g)
        cycle_blocks = [b for b in blocks(g).blocks if len(b) >= 3]
        assert len(cycle_blocks) == 1
        return structural.feasible_segments(g, cycle_order(g, cycle_blocks[0]), taxonomy)

    def test_antipodal_leaves(self):
        g = Graph(
            ["v1", "v2", "v3", "v4", "v5", "v6", "x", "y"],
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (3, 7)],
        )
        family = self._families(g)
        assert family.max_size == 5
        sizes = sorted(seg.size for seg in family.one_cut)
        assert sizes == [5, 5]

    def test_square_with_four_pendants(self):
        g = Graph(
            ["v1", "v2", "v3", "v4", "w1", "w2", "w3", "w4"],
            [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 5), (2, 6), (3, 7)],
        )
        family = self._families(g)
        assert family.two_cut and family.max_size == 2
        assert exact.min_cpds(g).optimum == 2

    def test_reference_instance_family_sizes(self):
        # cycle of 14 with seven cut vertices at gaps 1,2,1,0,1,1,1;
        # positions p1,p3,p4,p5 carry one leaf (class r1), the rest two
        gaps = [1, 2, 1, 0, 1, 1, 1]
        size = 7 + sum(gaps)
        labels = [f"u{i}" for i in range(size)]
        edges = [(i, (i + 1) % size) for i in range(size)]
        position = 0
        anchors = []
        for gap in gaps:
            anchors.append(position)
            position += 1 + gap
        single = {0, 2, 3, 4}
        for i, anchor in enumerate(anchors):
            for j in range(1 if i in single else 2):
                labels.append(f"leaf{i}_{j}")
                edges.append((anchor, len(labels) - 1))
        g = Graph(labels, edges)
        family = self._families(g)
        assert len(family.zero_cut) == 7
        assert len(family.one_cut) == 4
        assert len(family.two_cut) == 1
        assert family.max_size == 4


class TestCactus:
    def test_pure_cycle(self):
        assert structural.cactus_cpds(cycle_graph(10)).optimum == 1

    def test_antipodal_leaves_instance(self):
        g = Graph(
            ["v1", "v2", "v3", "v4", "v5", "v6", "x", "y"],
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (3, 7)],
        )
        assert structural.cactus_cpds(g).optimum == 1  # 8 - 2 - 5

    def test_two_squares_sharing_a_vertex(self):
        g = Graph(
            ["v", "a", "b", "c", "d", "e", "f"],
            [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)],
        )
        result = structural.cactus_cpds(g)
        assert result.optimum == 1 and result.witness == (0,)

    def test_rejects_non_cactus(self):
        with pytest.raises(GraphClassError):
            structural.cactus_cpds(complete_graph(4))

    def test_oracle_agreement(self):
        rng = random.Random(19)
        for _ in range(50):
            g = random_cactus(rng, rng.randint(2, 13))
            fast = structural.cactus_cpds(g)
            slow = exact.min_cpds(g)
            assert fast.optimum == slow.optimum
            ok, _ = prop.is_power_dominating(g, fast.witness)
            assert ok and prop.is_connected_set(g, fast.witness)


class TestDecomposition:
    def test_bowtie(self):
        assert structural.decompose_cpds(bowtie()).optimum == 1

    def test_two_triangles_bridge(self):
        assert structural.decompose_cpds(two_triangles_bridge()).optimum == 2

    def test_spider_hub_only(self):
        result = structural.decompose_cpds(spider_three_legs())
        assert result.optimum == 1 and result.witness == (0,)

    def test_k4_with_pendant_path(self):
        assert structural.decompose_cpds(k4_with_pendant_path()).optimum == 1

    def test_rejects_biconnected_and_paths(self):
        with pytest.raises(GraphClassError):
            structural.decompose_cpds(cycle_graph(5))
        with pytest.raises(GraphClassError):
            structural.decompose_cpds(path_graph(4))

    def test_matches_tree_solver_on_trees(self):
        rng = random.Random(23)
        for _ in range(30):
            g = random_tree(rng, rng.randint(3, 12))
            if recognize(g).path:
                continue
            assert structural.decompose_cpds(g).optimum == structural.tree_cpds(g).optimum

    def test_exact_subsolver_agreement(self):
        rng = random.Random(29)
        solver = lambda h: exact.min_cpds(h)  # noqa: E731
        for _ in range(40):
            g = random_connected_with_cut_vertex(rng, rng.randint(4, 11))
            fast = structural.decompose_cpds(g, subsolver=solver)
            assert fast.optimum == exact.min_cpds(g).optimum


class TestAutoDispatch:
    def test_routes_to_strongest_method(self):
        assert structural.solve_cpds(path_graph(5)).method == "tree"
        assert structural.solve_cpds(bowtie()).method == "block"
        g = Graph(
            ["v1", "v2", "v3", "v4", "v5", "x"],
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)],
        )
        assert structural.solve_cpds(g).method == "cactus"
        assert structural.solve_cpds(cycle_graph(5)).method == "cactus"
        from conftest import complete_bipartite

        assert structural.solve_cpds(complete_bipartite(2, 3)).method == "brute"

    def test_decompose_route_for_general_cut_graphs(self):
        g = complete_graph(4)
        g = Graph(
            list(g.labels) + ["w1", "w2", "w3", "w4"],
            list(g.edges()) + [(0, 4), (4, 5), (5, 6), (6, 7), (7, 4)],
        )
        result = structural.solve_cpds(g)
        assert result.method == "decomposition"
        assert result.optimum == exact.min_cpds(g).optimum
