import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from src.graph_core import (
    Graph,
    GraphError,
    GraphFormatError,
    VertexError,
    complement,
    complete_bipartite_graph,
    complete_graph,
    connected_components,
    cycle_graph,
    degree_profile,
    disjoint_union,
    empty_graph,
    induced,
    is_biconnected,
    is_connected,
    join,
    parse_edge_list,
    path_graph,
    petersen_graph,
    read_graph,
    serialize_edge_list,
    star_graph,
    to_graph6,
    to_networkx,
    with_edges,
    write_graph,
)

from .strategies import PROPERTY_SETTINGS, graphs


class TestConstruction:
    def test_from_edges_normalizes_and_sorts(self):
        G = Graph.from_edges(4, [(2, 1), (0, 3), (3, 2)])
        assert G.order == 4
        assert G.size == 3
        assert G.edge_list() == [(0, 3), (1, 2), (2, 3)]
        assert G.neighbor_list(2) == [1, 3]
        assert G.degrees.tolist() == [1, 1, 2, 2]

    def test_rejects_self_loop(self):
        with pytest.raises(GraphError, match="self-loop"):
            Graph.from_edges(3, [(1, 1)])

    def test_rejects_duplicate_edge_in_either_orientation(self):
        with pytest.raises(GraphError, match="duplicate"):
            Graph.from_edges(3, [(0, 1), (1, 0)])

    def test_rejects_vertex_out_of_range(self):
        with pytest.raises(VertexError):
            Graph.from_edges(3, [(0, 3)])

    def test_graph_is_immutable(self):
        G = cycle_graph(5)
        with pytest.raises(ValueError):
            G.indices[0] = 4

    def test_has_edge_small_and_large(self):
        small = cycle_graph(6)
        assert small.has_edge(0, 5) and not small.has_edge(0, 3)
        large = cycle_graph(600)
        assert large.has_edge(599, 0)
        assert large.has_edge(np.int64(10), np.int64(11))
        assert not large.has_edge(0, 300)


class TestNamedGraphs:
    @pytest.mark.parametrize(
        "G, n, m",
        [
            (empty_graph(4), 4, 0),
            (complete_graph(6), 6, 15),
            (cycle_graph(7), 7, 7),
            (path_graph(5), 5, 4),
            (star_graph(4), 5, 4),
            (complete_bipartite_graph(3, 4), 7, 12),
            (petersen_graph(), 10, 15),
        ],
    )
    def test_orders_and_sizes(self, G, n, m):
        assert (G.order, G.size) == (n, m)

    def test_petersen_is_cubic(self):
        assert set(petersen_graph().degrees.tolist()) == {3}

    def test_cycle_needs_three_vertices(self):
        with pytest.raises(GraphError):
            cycle_graph(2)


class TestAlgebra:
    def test_join_of_vertex_and_cycle_is_wheel(self):
        wheel = join(empty_graph(1), cycle_graph(4))
        assert (wheel.order, wheel.size) == (5, 8)
        assert wheel.degree(0) == 4

    def test_disjoint_union_shifts_ids(self):
        G = disjoint_union([complete_graph(3), path_graph(2)])
        assert G.edge_list() == [(0, 1), (0, 2), (1, 2), (3, 4)]

    def test_complement_of_five_cycle_is_five_cycle(self):
        C = complement(cycle_graph(5))
        assert C.size == 5
        assert set(C.degrees.tolist()) == {2}
        assert is_biconnected(C).biconnected

    def test_induced_relabels_in_increasing_order(self):
        sub, mapping = induced(petersen_graph(), [9, 0, 5, 1])
        assert mapping == {0: 0, 1: 1, 5: 2, 9: 3}
        assert sub.edge_list() == [(0, 1), (0, 2)]

    def test_with_edges_adds_and_removes(self):
        G = with_edges(cycle_graph(4), add=[(0, 2)], remove=[(1, 0)])
        assert G.edge_list() == [(0, 2), (0, 3), (1, 2), (2, 3)]


class TestConnectivity:
    def test_degree_profile_reports_second_minimum(self):
        profile = degree_profile(join(empty_graph(1), path_graph(3)))
        assert profile.min_degree == 2
        assert profile.second_min_degree == 2
        assert profile.degrees.tolist() == [3, 2, 3, 2]

    def test_degree_profile_of_single_vertex(self):
        assert degree_profile(empty_graph(1)).second_min_degree is None

    def test_bowtie_has_one_articulation_point(self):
        bowtie = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
        report = is_biconnected(bowtie)
        assert report.connected
        assert not report.biconnected
        assert report.articulation_points == (2,)

    def test_edge_is_not_two_connected(self):
        assert not is_biconnected(complete_graph(2))

    def test_components_after_removal(self):
        assert connected_components(cycle_graph(6), removed=[0, 3]) == [[1, 2], [4, 5]]
        assert not is_connected(empty_graph(0))

    @PROPERTY_SETTINGS
    @given(G=graphs(min_n=3, max_n=8))
    def test_biconnectivity_matches_networkx(self, G):
        nxg = to_networkx(G)
        report = is_biconnected(G)
        assert report.biconnected == nx.is_biconnected(nxg)
        assert set(report.articulation_points) == set(nx.articulation_points(nxg))

    @PROPERTY_SETTINGS
    @given(G=graphs(min_n=1, max_n=9))
    def test_components_match_networkx(self, G):
        expected = sorted(sorted(c) for c in nx.connected_components(to_networkx(G)))
        assert connected_components(G) == expected


class TestEdgeListFormat:
    def test_parses_comments_and_blank_lines(self):
        G = parse_edge_list("# triangle\n3 3\n\n0 1\n1 2\n# closing edge\n2 0\n")
        assert G.edge_list() == [(0, 1), (0, 2), (1, 2)]

    def test_serializes_canonically(self):
        assert serialize_edge_list(path_graph(3)) == b"3 2\n0 1\n1 2\n"

    @pytest.mark.parametrize(
        "text, line",
        [
            ("3 2\n0 1\n0 1\n", 3),
            ("3 1\n1 1\n", 2),
            ("3 1\n0 3\n", 2),
            ("3 1\n0 x\n", 2),
            ("3 1\n0 1\n1 2\n", 3),
            ("3 2\n0 1\n", 1),
        ],
    )
    def test_rejects_malformed_lines(self, text, line):
        with pytest.raises(GraphFormatError) as exc:
            parse_edge_list(text)
        assert exc.value.line == line

    def test_rejects_missing_header(self):
        with pytest.raises(GraphFormatError, match="header"):
            parse_edge_list("# nothing here\n")

    def test_reads_graph6(self):
        G = parse_edge_list(to_graph6(petersen_graph()))
        assert G.edge_list() == petersen_graph().edge_list()

    def test_rejects_bad_graph6(self):
        with pytest.raises(GraphFormatError):
            parse_edge_list(b"C\n")

    def test_file_round_trip(self, tmp_path):
        path = tmp_path / "petersen.el"
        write_graph(path, petersen_graph())
        assert read_graph(path).edge_list() == petersen_graph().edge_list()

    @PROPERTY_SETTINGS
    @given(G=graphs(min_n=1, max_n=9))
    def test_serialized_form_parses_back(self, G):
        assert parse_edge_list(serialize_edge_list(G)).edge_list() == G.edge_list()
