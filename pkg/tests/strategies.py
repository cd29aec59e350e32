"""Hypothesis strategies for small simple graphs"""
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from src.graph_core import Graph

PROPERTY_SETTINGS = settings(
    max_examples=120,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


def _pair(x: int, y: int):
    return (min(x, y), max(x, y))


@st.composite
def graphs(draw: st.DrawFn, min_n: int = 1, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [pair for pair, chosen in zip(pairs, keep) if chosen])


def _chords(draw: st.DrawFn, n: int, extra: int) -> set:
    edges = set()
    for _ in range(draw(st.integers(0, extra))):
        x, y = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if x != y:
            edges.add(_pair(x, y))
    return edges


@st.composite
def connected_graphs(draw: st.DrawFn, min_n: int = 2, max_n: int = 8, extra: int = 6) -> Graph:
    """Random spanning tree plus chords"""
    n = draw(st.integers(min_n, max_n))
    edges = {(draw(st.integers(0, v - 1)), v) for v in range(1, n)}
    edges |= _chords(draw, n, extra)
    return Graph.from_edges(n, sorted(edges))


@st.composite
def biconnected_graphs(draw: st.DrawFn, min_n: int = 3, max_n: int = 8, extra: int = 8) -> Graph:
    """Open ear decomposition: a base cycle, ears between distinct placed vertices, then chords"""
    n = draw(st.integers(max(3, min_n), max_n))
    base = draw(st.integers(3, n))
    edges = {(i, i + 1) for i in range(base - 1)} | {(0, base - 1)}
    placed = base
    while placed < n:
        length = draw(st.integers(1, min(3, n - placed)))
        a = draw(st.integers(0, placed - 1))
        b = draw(st.integers(0, placed - 2))
        b += b >= a
        path = [a] + list(range(placed, placed + length)) + [b]
        edges.update(_pair(x, y) for x, y in zip(path, path[1:]))
        placed += length
    edges |= _chords(draw, n, extra)
    return Graph.from_edges(n, sorted(edges))
