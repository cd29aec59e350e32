import pytest
from hypothesis import given

from src.graph_core import Graph, GraphError, complete_graph, cycle_graph, path_graph, petersen_graph
from src.longcycle import (
    Ear,
    PathError,
    PathState,
    Vine,
    best_crossing,
    close_crossing,
    find_long_cycle,
    grow_vine,
    rotate,
    validate_cycle,
    validate_path,
    vine_merge,
)
from src.oracle import circumference

from .strategies import PROPERTY_SETTINGS, biconnected_graphs


def path_with(n: int, extra):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)] + list(extra))


class TestValidators:
    def test_valid_cycle(self):
        assert validate_cycle(cycle_graph(5), [0, 1, 2, 3, 4], min_length=5)

    @pytest.mark.parametrize(
        "cycle, fragment",
        [
            ([0, 1, 2, 3], "closing edge"),
            ([0, 1, 2, 1], "repeat"),
            ([0, 2, 3, 4, 1], "not adjacent"),
            ([0, 1], "needs at least"),
            ([0, 1, 9], "outside"),
            ([0, 1, "2"], "not an integer"),
        ],
    )
    def test_invalid_cycles(self, cycle, fragment):
        result = validate_cycle(cycle_graph(5), cycle)
        assert not result
        assert fragment in result.diagnostic

    def test_cycle_shorter_than_threshold(self):
        assert not validate_cycle(complete_graph(5), [0, 1, 2], min_length=4)

    def test_paths(self):
        G = path_graph(4)
        assert validate_path(G, [3, 2, 1, 0], min_order=4)
        assert validate_path(G, [2], min_order=1)
        assert not validate_path(G, [0, 2])
        assert not validate_path(G, [0, 1], min_order=3)


class TestPathOperations:
    def test_state_rejects_non_paths(self):
        with pytest.raises(PathError):
            PathState(path_graph(4), [0, 2])
        with pytest.raises(PathError):
            PathState(path_graph(4), [])

    def test_endpoint_neighbor_indices(self):
        state = PathState(path_with(6, [(0, 3), (5, 2)]), range(6))
        assert state.first_neighbors == (1, 3)
        assert state.last_neighbors == (2, 4)
        assert state.shifted_first == (0, 2)
        assert state.shifted_last == (3, 5)
        assert not state.is_disjoint()

    def test_head_rotation(self):
        state = PathState(path_with(5, [(0, 3)]), range(5))
        rotated = rotate(state, 3)
        assert rotated.order == (2, 1, 0, 3, 4)

    def test_tail_rotation(self):
        state = PathState(path_with(5, [(4, 1)]), range(5))
        rotated = rotate(state, 1, end="tail")
        assert rotated.order == (0, 1, 4, 3, 2)

    def test_rotation_needs_a_pivot(self):
        state = PathState(path_graph(5), range(5))
        with pytest.raises(PathError):
            rotate(state, 2)
        with pytest.raises(PathError):
            rotate(state, 7)

    def test_crossing_closes_a_hamiltonian_cycle(self):
        state = PathState(path_with(6, [(0, 3), (5, 2)]), range(6))
        assert best_crossing(state) == (2, 3)
        cycle = close_crossing(state, 2, 3)
        assert cycle.cycle == (0, 1, 2, 5, 4, 3)
        assert validate_cycle(state.graph, cycle.cycle, min_length=6)

    def test_crossing_requires_both_chords(self):
        state = PathState(path_with(6, [(0, 3)]), range(6))
        assert best_crossing(state) is None
        with pytest.raises(PathError):
            close_crossing(state, 2, 3)
        with pytest.raises(PathError):
            close_crossing(state, 3, 2)


class TestVines:
    def test_single_ear_vine(self):
        G = path_with(7, [(0, 2), (4, 6), (1, 5)])
        state = PathState(G, range(7))
        assert state.is_disjoint()
        vine = grow_vine(G, state, 2, 4)
        assert vine.ears == (Ear(s=1, t=5, interior=()),)
        cycle = vine_merge(state, vine)
        assert cycle.length == 7
        assert validate_cycle(G, cycle.cycle, min_length=7)

    def test_two_ear_vine_keeps_both_endpoints(self):
        G = path_with(10, [(0, 2), (9, 7), (1, 5), (3, 8)])
        state = PathState(G, range(10))
        vine = grow_vine(G, state, 2, 7)
        assert [(ear.s, ear.t) for ear in vine.ears] == [(1, 5), (3, 8)]
        cycle = vine_merge(state, vine)
        assert {0, 9} <= set(cycle.cycle)
        assert validate_cycle(G, cycle.cycle, min_length=9)

    def test_ear_through_off_path_vertices(self):
        # path 0..6, vertex 7 hangs between x_1 and x_5
        G = Graph.from_edges(8, [(i, i + 1) for i in range(6)] + [(0, 2), (4, 6), (1, 7), (7, 5)])
        state = PathState(G, range(7))
        vine = grow_vine(G, state, 2, 4)
        assert vine.ears == (Ear(s=1, t=5, interior=(7,)),)
        cycle = vine_merge(state, vine)
        assert cycle.length == 8

    def test_vine_arguments_are_checked(self):
        G = path_with(7, [(0, 2), (4, 6), (1, 5)])
        state = PathState(G, range(7))
        with pytest.raises(PathError):
            grow_vine(G, state, 4, 2)
        with pytest.raises(PathError):
            vine_merge(state, Vine(()))

    def test_missing_ear_is_reported(self):
        G = path_with(7, [(0, 2), (4, 6)])
        with pytest.raises(PathError, match="no ear"):
            grow_vine(G, PathState(G, range(7)), 2, 4)


class TestSearch:
    def test_finds_hamiltonian_cycle_in_complete_graph(self):
        G = complete_graph(8)
        found = find_long_cycle(G, 8)
        assert found is not None
        assert validate_cycle(G, found.cycle, min_length=8)

    def test_never_claims_an_impossible_cycle(self):
        assert find_long_cycle(petersen_graph(), 10) is None
        assert find_long_cycle(cycle_graph(5), 6) is None

    def test_threshold_below_three_is_rejected(self):
        with pytest.raises(GraphError):
            find_long_cycle(cycle_graph(5), 1)

    def test_large_cycle(self):
        G = cycle_graph(5000)
        found = find_long_cycle(G, 5000)
        assert found is not None and found.length == 5000

    @PROPERTY_SETTINGS
    @given(G=biconnected_graphs(min_n=4, max_n=10))
    def test_witnesses_are_valid(self, G):
        L = max(3, circumference(G).value)
        found = find_long_cycle(G, L)
        if found is not None:
            assert validate_cycle(G, found.cycle, min_length=L)
