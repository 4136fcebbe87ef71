import networkx as nx
from hypothesis import given, settings

import oracles
from isk4lab.decompose import (
    CliqueCutset,
    MultipartiteCert,
    Proper2Cutset,
    find_clique_cutset,
    find_proper_2cutset,
    recognize_complete_multipartite,
    recognize_line_graph_subcubic,
)
from isk4lab.graphs import Graph, is_connected, mask_of
from test_graphs import random_graph_strategy
from test_patterns import K33, K123, K222, PRISM6, all_graphs


class TestCliqueCutset:
    def test_bowtie_cutvertex(self):
        g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
        got = find_clique_cutset(g)
        assert got == CliqueCutset((2,))
        assert got.validate(g)

    def test_two_k4_sharing_triangle(self):
        g = Graph.from_edges(5, [(u, v) for u in range(4) for v in range(u + 1, 4)]
                             + [(1, 4), (2, 4), (3, 4)])
        got = find_clique_cutset(g)
        assert got == CliqueCutset((1, 2, 3))
        assert got.validate(g)

    def test_path_cutvertex(self):
        assert find_clique_cutset(Graph.path(4)) == CliqueCutset((1,))

    def test_disconnected_gives_empty_cutset(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        assert find_clique_cutset(g) == CliqueCutset(())

    def test_none_cases(self):
        assert find_clique_cutset(Graph.cycle(5)) is None
        assert find_clique_cutset(Graph.complete(4)) is None
        assert find_clique_cutset(K33) is None

    def test_exhaustive_n5_against_brute(self):
        for g in all_graphs(5):
            got = find_clique_cutset(g)
            assert (got is not None) == oracles.brute_has_clique_cutset(g)
            if got is not None:
                assert got.validate(g)

    @settings(max_examples=60)
    @given(random_graph_strategy(max_n=7))
    def test_presence_matches_brute(self, g):
        got = find_clique_cutset(g)
        assert (got is not None) == oracles.brute_has_clique_cutset(g)
        if got is not None:
            assert got.validate(g)


class TestProper2Cutset:
    def test_k24(self):
        g = Graph.complete_multipartite((2, 4))
        got = find_proper_2cutset(g)
        assert got == Proper2Cutset(0, 1, mask_of((2, 3)), mask_of((4, 5)))
        assert got.validate(g)

    def test_none_cases(self):
        # both C6 sides of any 2-cut are paths; K_{2,3} always leaves one
        assert find_proper_2cutset(Graph.cycle(6)) is None
        assert find_proper_2cutset(Graph.complete_multipartite((2, 3))) is None
        assert find_proper_2cutset(Graph.complete(4)) is None

    def test_exhaustive_n5_against_brute(self):
        for g in all_graphs(5):
            got = find_proper_2cutset(g)
            assert (got is not None) == oracles.brute_has_proper_2cutset(g)
            if got is not None:
                assert got.validate(g)

    @settings(max_examples=40)
    @given(random_graph_strategy(max_n=6))
    def test_presence_matches_brute(self, g):
        got = find_proper_2cutset(g)
        assert (got is not None) == oracles.brute_has_proper_2cutset(g)
        if got is not None:
            assert got.validate(g)

    def test_validate_rejects_bad_partition(self):
        g = Graph.complete_multipartite((2, 4))
        # sides that are single (a,b)-paths must be rejected
        assert not Proper2Cutset(0, 1, mask_of((2,)), mask_of((3, 4, 5))).validate(g)
        assert not Proper2Cutset(0, 1, 0, mask_of((2, 3, 4, 5))).validate(g)


class TestMultipartite:
    def test_k33(self):
        cert = recognize_complete_multipartite(K33)
        assert cert == MultipartiteCert((0b000111, 0b111000))
        assert cert.validate(K33)

    def test_k123(self):
        cert = recognize_complete_multipartite(K123)
        assert cert.parts == (0b000001, 0b000110, 0b111000)
        assert cert.validate(K123)

    def test_c4_is_k22(self):
        cert = recognize_complete_multipartite(Graph.cycle(4))
        assert cert.parts == (0b0101, 0b1010)

    def test_complete_graph_all_singletons(self):
        cert = recognize_complete_multipartite(Graph.complete(4))
        assert cert.parts == (1, 2, 4, 8)

    def test_none_cases(self):
        assert recognize_complete_multipartite(Graph.cycle(5)) is None
        assert recognize_complete_multipartite(Graph.empty(3)) is None
        assert recognize_complete_multipartite(Graph.empty(1)) is None
        assert recognize_complete_multipartite(Graph.path(4)) is None

    def test_exhaustive_n5_against_complement_components(self):
        for g in all_graphs(5):
            cert = recognize_complete_multipartite(g)
            sizes = oracles.multipartite_part_sizes(oracles.to_nx(g))
            if sizes is None or len(sizes) < 2:
                assert cert is None
            else:
                assert sorted(p.bit_count() for p in cert.parts) == sizes
                assert cert.validate(g)


class TestLineGraphSubcubic:
    def test_p3_root_is_p4(self):
        cert = recognize_line_graph_subcubic(Graph.path(3))
        assert cert is not None and cert.validate(Graph.path(3))
        assert nx.is_isomorphic(oracles.to_nx(cert.root), nx.path_graph(4))

    def test_c5_root_is_c5(self):
        cert = recognize_line_graph_subcubic(Graph.cycle(5))
        assert cert is not None
        assert nx.is_isomorphic(oracles.to_nx(cert.root), nx.cycle_graph(5))

    def test_claw_rejected(self):
        assert recognize_line_graph_subcubic(
            Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])) is None

    def test_k4_rejected(self):
        # K4 is a line graph, but only of the degree-4 star
        assert recognize_line_graph_subcubic(Graph.complete(4)) is None

    def test_triangle_has_some_root(self):
        cert = recognize_line_graph_subcubic(Graph.complete(3))
        assert cert is not None and cert.validate(Graph.complete(3))

    def test_prism_root_is_k23(self):
        cert = recognize_line_graph_subcubic(PRISM6)
        assert cert is not None and cert.validate(PRISM6)
        assert nx.is_isomorphic(oracles.to_nx(cert.root),
                                nx.complete_bipartite_graph(2, 3))

    def test_octahedron_root_is_k4(self):
        cert = recognize_line_graph_subcubic(K222)
        assert cert is not None and cert.validate(K222)
        assert nx.is_isomorphic(oracles.to_nx(cert.root), nx.complete_graph(4))

    def test_k1_root_is_p2(self):
        cert = recognize_line_graph_subcubic(Graph.empty(1))
        assert cert.edge_of == ((0, 1),)
        assert cert.validate(Graph.empty(1))

    def test_exhaustive_n5_against_root_enumeration(self):
        for g in all_graphs(5):
            if not is_connected(g):
                continue
            cert = recognize_line_graph_subcubic(g)
            assert (cert is not None) == oracles.brute_is_subcubic_line_graph(g)
            if cert is not None:
                assert cert.validate(g)

    @settings(max_examples=30, deadline=None)
    @given(random_graph_strategy(max_n=6))
    def test_presence_matches_brute(self, g):
        if not is_connected(g):
            return
        cert = recognize_line_graph_subcubic(g)
        assert (cert is not None) == oracles.brute_is_subcubic_line_graph(g)
