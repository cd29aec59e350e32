from itertools import combinations, permutations

import pytest
from hypothesis import given

from src.graph_core import (
    CapExceededError,
    Graph,
    GraphError,
    VertexError,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    path_graph,
    petersen_graph,
    star_graph,
)
from src.longcycle import validate_cycle, validate_path
from src.oracle import circumference, has_cycle_at_least, longest_path_order, longest_uv_path_order

from .strategies import PROPERTY_SETTINGS, biconnected_graphs, graphs


def brute_circumference(G: Graph) -> int:
    for length in range(G.order, 2, -1):
        for subset in combinations(range(G.order), length):
            first = subset[0]
            for rest in permutations(subset[1:]):
                cycle = (first,) + rest
                if validate_cycle(G, cycle):
                    return length
    return 0


def brute_longest_path(G: Graph) -> int:
    for length in range(G.order, 0, -1):
        for subset in combinations(range(G.order), length):
            if any(validate_path(G, order) for order in permutations(subset)):
                return length
    return 0


class TestCircumference:
    @pytest.mark.parametrize(
        "G, expected",
        [
            (cycle_graph(7), 7),
            (petersen_graph(), 9),
            (complete_graph(5), 5),
            (complete_bipartite_graph(3, 4), 6),
            (path_graph(6), 0),
            (empty_graph(0), 0),
        ],
    )
    def test_known_values(self, G, expected):
        result = circumference(G)
        assert result.value == expected
        if expected:
            assert validate_cycle(G, result.witness.cycle, min_length=expected)
        else:
            assert result.witness is None

    def test_threshold_query_on_petersen(self):
        G = petersen_graph()
        assert has_cycle_at_least(G, 10) is None
        witness = has_cycle_at_least(G, 9)
        assert witness is not None and witness.length == 9
        assert validate_cycle(G, witness.cycle, min_length=9)

    def test_threshold_above_order(self):
        assert has_cycle_at_least(cycle_graph(5), 6) is None

    def test_threshold_below_three_is_rejected(self):
        with pytest.raises(GraphError):
            has_cycle_at_least(cycle_graph(5), 2)

    def test_cap_is_enforced(self):
        with pytest.raises(CapExceededError):
            circumference(cycle_graph(21))
        assert circumference(cycle_graph(21), cap=21).value == 21

    @PROPERTY_SETTINGS
    @given(G=graphs(min_n=3, max_n=6))
    def test_matches_brute_force(self, G):
        assert circumference(G).value == brute_circumference(G)

    @PROPERTY_SETTINGS
    @given(G=biconnected_graphs(min_n=4, max_n=9))
    def test_threshold_query_is_consistent(self, G):
        value = circumference(G).value
        assert has_cycle_at_least(G, value) is not None
        if value < G.order:
            assert has_cycle_at_least(G, value + 1) is None


class TestLongestPaths:
    @pytest.mark.parametrize(
        "G, expected",
        [
            (path_graph(5), 5),
            (star_graph(3), 3),
            (empty_graph(1), 1),
            (empty_graph(0), 0),
            (disjoint_union([path_graph(3), cycle_graph(4)]), 4),
            (petersen_graph(), 10),
        ],
    )
    def test_known_values(self, G, expected):
        result = longest_path_order(G)
        assert result.value == expected
        if expected:
            assert validate_path(G, result.witness.vertices, min_order=expected)

    @PROPERTY_SETTINGS
    @given(G=graphs(min_n=1, max_n=6))
    def test_matches_brute_force(self, G):
        assert longest_path_order(G).value == brute_longest_path(G)

    def test_uv_paths_on_a_cycle(self):
        C = cycle_graph(6)
        assert longest_uv_path_order(C, 0, 3).value == 4
        assert longest_uv_path_order(C, 0, 1).value == 6

    def test_uv_witness_runs_from_u_to_v(self):
        G = petersen_graph()
        result = longest_uv_path_order(G, 0, 7)
        assert result.witness.vertices[0] == 0
        assert result.witness.vertices[-1] == 7
        assert validate_path(G, result.witness.vertices, min_order=result.value)

    def test_uv_disconnected(self):
        G = disjoint_union([path_graph(2), path_graph(2)])
        assert longest_uv_path_order(G, 0, 3).value == 0

    def test_uv_rejects_equal_or_unknown_endpoints(self):
        with pytest.raises(VertexError):
            longest_uv_path_order(cycle_graph(5), 2, 2)
        with pytest.raises(VertexError):
            longest_uv_path_order(cycle_graph(5), 0, 9)
