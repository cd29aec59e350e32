"""Immutable simple graphs: construction algebra, connectivity predicates and edge-list I/O"""
import sys
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

sys.path.append(str(Path(__file__).parent.parent))

import networkx as nx
import numpy as np

from config.settings import BITSET_THRESHOLD, MAX_ORDER


class GraphError(ValueError):
    """Base error for invalid graphs, parameters and unmet preconditions"""


class GraphFormatError(GraphError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class VertexError(GraphError):
    pass


class PreconditionError(GraphError):
    def __init__(self, check: str, message: str):
        self.check = check
        super().__init__(f"{check}: {message}")


class CapExceededError(GraphError):
    pass


class BudgetExceededError(GraphError):
    pass


class Graph:
    """Simple undirected graph on vertices 0..n-1, stored as sorted CSR adjacency.

    Instances are immutable; every construction helper returns a new graph.
    """

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray):
        self._n = n
        self._indptr = indptr
        self._indices = indices
        self._indptr.setflags(write=False)
        self._indices.setflags(write=False)

    @classmethod
    def from_edges(cls, n: int, edges: Union[Sequence[Tuple[int, int]], np.ndarray] = ()) -> "Graph":
        """Build a graph from an edge collection, rejecting loops, repeats and bad ids"""
        if n < 0 or n > MAX_ORDER:
            raise GraphError(f"order {n} outside [0, {MAX_ORDER}]")
        arr = np.asarray(edges, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise GraphError("edges must be a sequence of vertex pairs")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            bad = int(arr[(arr < 0) | (arr >= n)][0])
            raise VertexError(f"vertex id {bad} outside [0, {n})")

        u = np.minimum(arr[:, 0], arr[:, 1])
        v = np.maximum(arr[:, 0], arr[:, 1])
        loops = np.flatnonzero(u == v)
        if loops.size:
            raise GraphError(f"self-loop at vertex {int(u[loops[0]])}")
        keys = u * max(n, 1) + v
        uniq, counts = np.unique(keys, return_counts=True)
        if uniq.size != keys.size:
            dup = int(uniq[counts > 1][0])
            raise GraphError(f"duplicate edge {dup // n} {dup % n}")

        src = np.concatenate([u, v])
        dst = np.concatenate([v, u])
        order = np.lexsort((dst, src))
        indices = dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(n, indptr, np.ascontiguousarray(indices))

    # Basic measures

    @property
    def order(self) -> int:
        return self._n

    @property
    def size(self) -> int:
        return len(self._indices) // 2

    def __len__(self) -> int:
        return self._n

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.diff(self._indptr)
        deg.setflags(write=False)
        return deg

    def degree(self, v: int) -> int:
        return int(self._indptr[v + 1] - self._indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbor ids of v (read-only view)"""
        return self._indices[self._indptr[v] : self._indptr[v + 1]]

    def neighbor_list(self, v: int) -> List[int]:
        return self._indices[self._indptr[v] : self._indptr[v + 1]].tolist()

    def has_edge(self, u: int, v: int) -> bool:
        u, v = int(u), int(v)
        if self._n < BITSET_THRESHOLD:
            return bool(self.bitsets[u] >> v & 1)
        row = self.neighbors(u)
        pos = int(np.searchsorted(row, v))
        return pos < len(row) and int(row[pos]) == v

    @property
    def indptr(self) -> np.ndarray:
        return self._indptr

    @property
    def indices(self) -> np.ndarray:
        return self._indices

    @cached_property
    def sources(self) -> np.ndarray:
        """Row id of every CSR entry, aligned with `indices`"""
        src = np.repeat(np.arange(self._n, dtype=np.int64), self.degrees)
        src.setflags(write=False)
        return src

    @cached_property
    def edges(self) -> np.ndarray:
        """All edges as an (m, 2) array with u < v, in lexicographic order"""
        mask = self._indices > self.sources
        pairs = np.column_stack([self.sources[mask], self._indices[mask]])
        pairs.setflags(write=False)
        return pairs

    def edge_list(self) -> List[Tuple[int, int]]:
        return [tuple(pair) for pair in self.edges.tolist()]

    @cached_property
    def adjacency(self) -> Tuple[frozenset, ...]:
        return tuple(frozenset(self.neighbor_list(v)) for v in range(self._n))

    @cached_property
    def bitsets(self) -> Tuple[int, ...]:
        """Neighborhoods as integer bitsets (bit w set iff w is a neighbor)"""
        masks = []
        for v in range(self._n):
            mask = 0
            for w in self.neighbor_list(v):
                mask |= 1 << w
            masks.append(mask)
        return tuple(masks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._n == other._n
            and np.array_equal(self._indptr, other._indptr)
            and np.array_equal(self._indices, other._indices)
        )

    def __hash__(self) -> int:
        return hash((self._n, self._indices.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.size})"


@dataclass(frozen=True, eq=False)
class DegreeProfile:
    degrees: np.ndarray
    min_degree: int
    second_min_degree: Optional[int]
    min_vertex: int


@dataclass(frozen=True)
class CheckResult:
    """Validator outcome: ok plus the first failure found"""

    ok: bool
    diagnostic: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class BiconnectivityReport:
    biconnected: bool
    connected: bool
    articulation_points: Tuple[int, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.biconnected


class WorkMeter:
    """Counts elementary steps (adjacency entries scanned) for one decision call"""

    def __init__(self):
        self.steps = 0

    def add(self, count: int) -> None:
        self.steps += int(count)


def check_vertex(G: Graph, v: int) -> int:
    if not 0 <= v < G.order:
        raise VertexError(f"vertex id {v} outside [0, {G.order})")
    return int(v)


# Named graphs


def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, ())


def complete_graph(n: int) -> Graph:
    iu, ju = np.triu_indices(n, k=1)
    return Graph.from_edges(n, np.column_stack([iu, ju]))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    idx = np.arange(n)
    return Graph.from_edges(n, np.column_stack([idx, (idx + 1) % n]))


def path_graph(n: int) -> Graph:
    idx = np.arange(max(n - 1, 0))
    return Graph.from_edges(n, np.column_stack([idx, idx + 1]))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the center at vertex 0"""
    return join(empty_graph(1), empty_graph(leaves))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return join(empty_graph(a), empty_graph(b))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def circulant_graph(n: int, offsets: Iterable[int]) -> Graph:
    """Circulant on Z_n joining i and i+d for every offset d (1 <= d <= n/2)"""
    pairs = set()
    for d in offsets:
        if not 1 <= d <= n // 2:
            raise GraphError(f"circulant offset {d} outside [1, {n // 2}]")
        for i in range(n):
            j = (i + d) % n
            pairs.add((min(i, j), max(i, j)))
    return Graph.from_edges(n, sorted(pairs))


# Construction algebra


def join(G: Graph, H: Graph) -> Graph:
    """G + H: disjoint union plus every edge between the two sides"""
    n_g, n_h = G.order, H.order
    cross = np.column_stack(
        [
            np.repeat(np.arange(n_g, dtype=np.int64), n_h),
            np.tile(np.arange(n_g, n_g + n_h, dtype=np.int64), n_g),
        ]
    )
    return Graph.from_edges(n_g + n_h, np.concatenate([G.edges, H.edges + n_g, cross.reshape(-1, 2)]))


def disjoint_union(parts: Sequence[Graph]) -> Graph:
    offset = 0
    blocks = [np.empty((0, 2), dtype=np.int64)]
    for part in parts:
        blocks.append(part.edges + offset)
        offset += part.order
    return Graph.from_edges(offset, np.concatenate(blocks))


def complement(G: Graph) -> Graph:
    n = G.order
    iu, ju = np.triu_indices(n, k=1)
    present = np.isin(iu * max(n, 1) + ju, G.edges[:, 0] * max(n, 1) + G.edges[:, 1])
    return Graph.from_edges(n, np.column_stack([iu[~present], ju[~present]]))


def induced(G: Graph, vertices: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    """Subgraph induced by `vertices`, relabeled in increasing old-id order"""
    keep = sorted({check_vertex(G, v) for v in vertices})
    mapping = {old: new for new, old in enumerate(keep)}
    lookup = np.full(G.order, -1, dtype=np.int64)
    if keep:
        lookup[np.asarray(keep)] = np.arange(len(keep))
    e = G.edges
    mask = (lookup[e[:, 0]] >= 0) & (lookup[e[:, 1]] >= 0) if len(e) else np.zeros(0, dtype=bool)
    return Graph.from_edges(len(keep), lookup[e[mask]]), mapping


def with_edges(
    G: Graph, add: Iterable[Tuple[int, int]] = (), remove: Iterable[Tuple[int, int]] = ()
) -> Graph:
    """Copy of G with edges added and removed"""
    drop = {(min(u, v), max(u, v)) for u, v in remove}
    kept = [edge for edge in G.edge_list() if edge not in drop]
    return Graph.from_edges(G.order, kept + [(min(u, v), max(u, v)) for u, v in add])


# Degrees and connectivity


def degree_profile(G: Graph) -> DegreeProfile:
    if G.order < 1:
        raise GraphError("degree profile needs at least one vertex")
    deg = G.degrees
    low = int(np.argmin(deg))
    second = None
    if G.order > 1:
        second = int(np.partition(deg, 1)[1])
    return DegreeProfile(degrees=deg, min_degree=int(deg[low]), second_min_degree=second, min_vertex=low)


def connected_components(G: Graph, removed: Iterable[int] = ()) -> List[List[int]]:
    """Components of G minus `removed`, each sorted, listed by smallest vertex"""
    seen = np.zeros(G.order, dtype=bool)
    for v in removed:
        seen[v] = True
    components = []
    for start in range(G.order):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for w in G.neighbor_list(v):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    frontier.append(w)
        comp.sort()
        components.append(comp)
    return components


def is_connected(G: Graph) -> bool:
    return G.order > 0 and len(connected_components(G)) == 1


def is_biconnected(G: Graph) -> BiconnectivityReport:
    """Lowpoint DFS: biconnected iff n >= 3, connected, and no articulation vertex"""
    n = G.order
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    cut = set()
    timer = 0
    roots = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        roots += 1
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [(root, iter(G.neighbor_list(root)))]
        while stack:
            v, it = stack[-1]
            for w in it:
                if disc[w] == -1:
                    parent[w] = v
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, iter(G.neighbor_list(w))))
                    break
                if w != parent[v]:
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if p != root and low[v] >= disc[p]:
                        cut.add(p)
        if root_children >= 2:
            cut.add(root)

    connected = n > 0 and roots == 1
    return BiconnectivityReport(
        biconnected=n >= 3 and connected and not cut,
        connected=connected,
        articulation_points=tuple(sorted(cut)),
    )


# I/O


def parse_edge_list(text: Union[bytes, str]) -> Graph:
    """Parse the canonical edge-list format, or graph6 when the first byte says so"""
    data = text.encode() if isinstance(text, str) else bytes(text)
    head = data.lstrip()
    if head and not (head[:1].isdigit() or head[:1] == b"#"):
        return _parse_graph6(head)

    try:
        lines = data.decode("ascii").splitlines()
    except UnicodeDecodeError:
        raise GraphFormatError("edge list must be ASCII text")

    n = m = header_line = None
    edges: List[Tuple[int, int]] = []
    seen = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise GraphFormatError(f"expected two non-negative integers, got {line!r}", lineno)
        a, b = int(parts[0]), int(parts[1])
        if n is None:
            if a > MAX_ORDER:
                raise GraphFormatError(f"order {a} exceeds {MAX_ORDER}", lineno)
            n, m, header_line = a, b, lineno
            continue
        if a >= n or b >= n:
            raise GraphFormatError(f"vertex id out of range [0, {n})", lineno)
        if a == b:
            raise GraphFormatError(f"self-loop at vertex {a}", lineno)
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {key[0]} {key[1]}", lineno)
        if len(edges) == m:
            raise GraphFormatError(f"more than the declared {m} edges", lineno)
        seen.add(key)
        edges.append(key)

    if n is None:
        raise GraphFormatError("missing 'n m' header line")
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges but {len(edges)} were listed", header_line)
    return Graph.from_edges(n, edges)


def _parse_graph6(data: bytes) -> Graph:
    token = data.split()[0]
    try:
        return from_networkx(nx.from_graph6_bytes(token))
    except (ValueError, nx.NetworkXError) as e:
        raise GraphFormatError(f"invalid graph6 data: {e}", 1)


def serialize_edge_list(G: Graph) -> bytes:
    lines = [f"{G.order} {G.size}"]
    lines.extend(f"{u} {v}" for u, v in G.edge_list())
    return ("\n".join(lines) + "\n").encode("ascii")


def to_graph6(G: Graph) -> bytes:
    return nx.to_graph6_bytes(to_networkx(G), header=False).strip()


def to_networkx(G: Graph) -> nx.Graph:
    nxg = nx.Graph()
    nxg.add_nodes_from(range(G.order))
    nxg.add_edges_from(G.edge_list())
    return nxg


def from_networkx(nxg: nx.Graph) -> Graph:
    if set(nxg.nodes) != set(range(nxg.number_of_nodes())):
        nxg = nx.convert_node_labels_to_integers(nxg, ordering="sorted")
    return Graph.from_edges(nxg.number_of_nodes(), [(int(u), int(v)) for u, v in nxg.edges()])


def read_graph(path: Union[str, Path]) -> Graph:
    return parse_edge_list(Path(path).read_bytes())


def write_graph(path: Union[str, Path], G: Graph) -> None:
    Path(path).write_bytes(serialize_edge_list(G))
