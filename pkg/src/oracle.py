"""Exact longest-cycle and longest-path oracles by bitset backtracking"""
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union

sys.path.append(str(Path(__file__).parent.parent))

from config.settings import ORACLE_CAP
from src.graph_core import CapExceededError, Graph, GraphError, VertexError, check_vertex
from src.longcycle import CycleWitness, PathWitness


@dataclass(frozen=True)
class OracleResult:
    value: int
    witness: Optional[Union[CycleWitness, PathWitness]] = None


def _check_cap(G: Graph, cap: Optional[int]) -> None:
    limit = ORACLE_CAP if cap is None else cap
    if G.order > limit:
        raise CapExceededError(f"oracle accepts at most {limit} vertices, graph has {G.order}")


def _reach(bits: Tuple[int, ...], seeds: int, allowed: int) -> int:
    """Vertices of `allowed` reachable from `seeds` (seeds themselves filtered by allowed)"""
    seen = frontier = seeds & allowed
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        new = bits[low.bit_length() - 1] & allowed & ~seen
        seen |= new
        frontier |= new
    return seen


def _members(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class _CycleSearch:
    """Cycles rooted at their smallest vertex; returns the longest, or the first >= target"""

    def __init__(self, G: Graph, target: Optional[int]):
        self.bits = G.bitsets
        self.n = G.order
        self.target = target
        self.best: List[int] = []

    def limit(self) -> int:
        floor = max(3, len(self.best) + 1)
        return floor if self.target is None else max(floor, self.target)

    def done(self) -> bool:
        return self.target is not None and len(self.best) >= self.target

    def run(self) -> List[int]:
        full = (1 << self.n) - 1
        for root in range(self.n):
            allowed = full & ~((1 << (root + 1)) - 1)
            if allowed.bit_count() + 1 < self.limit():
                break
            self.root = root
            self.path = [root]
            self._extend(root, allowed)
            if self.done():
                break
        return self.best

    def _extend(self, v: int, avail: int) -> bool:
        path = self.path
        if len(path) >= 3 and self.bits[v] >> self.root & 1 and len(path) > len(self.best):
            self.best = path.copy()
            if self.done():
                return True
        reach = _reach(self.bits, self.bits[v], avail)
        if len(path) + reach.bit_count() < self.limit():
            return False
        if not reach & self.bits[self.root]:
            return False
        for w in _members(self.bits[v] & avail):
            path.append(w)
            stop = self._extend(w, avail & ~(1 << w))
            path.pop()
            if stop:
                return True
        return False


def has_cycle_at_least(G: Graph, L: int, cap: Optional[int] = None) -> Optional[CycleWitness]:
    """A cycle of length >= L, or None exactly when the circumference is below L"""
    _check_cap(G, cap)
    if L < 3:
        raise GraphError(f"cycle threshold L = {L} must be at least 3")
    if L > G.order:
        return None
    found = _CycleSearch(G, target=L).run()
    return CycleWitness(tuple(found)) if len(found) >= L else None


def circumference(G: Graph, cap: Optional[int] = None) -> OracleResult:
    """Length of a longest cycle (0 when acyclic) with one witness"""
    _check_cap(G, cap)
    found = _CycleSearch(G, target=None).run()
    if not found:
        return OracleResult(0)
    return OracleResult(len(found), CycleWitness(tuple(found)))


def longest_path_order(G: Graph, cap: Optional[int] = None) -> OracleResult:
    """Vertex count of a longest path with one witness"""
    _check_cap(G, cap)
    n = G.order
    if n == 0:
        return OracleResult(0)
    bits = G.bitsets
    full = (1 << n) - 1
    best: List[int] = [0]

    def extend(path: List[int], avail: int) -> bool:
        nonlocal best
        if len(path) > len(best):
            best = path.copy()
            if len(best) == n:
                return True
        v = path[-1]
        reach = _reach(bits, bits[v], avail)
        if len(path) + reach.bit_count() <= len(best):
            return False
        for w in _members(bits[v] & avail):
            path.append(w)
            stop = extend(path, avail & ~(1 << w))
            path.pop()
            if stop:
                return True
        return False

    for start in range(n):
        if extend([start], full & ~(1 << start)):
            break
    return OracleResult(len(best), PathWitness(tuple(best)))


def longest_uv_path_order(G: Graph, u: int, v: int, cap: Optional[int] = None) -> OracleResult:
    """Max vertex count of a u-v path (0 when u and v are disconnected)"""
    check_vertex(G, u)
    check_vertex(G, v)
    if u == v:
        raise VertexError(f"u and v must differ, both are {u}")
    _check_cap(G, cap)
    bits = G.bitsets
    full = (1 << G.order) - 1
    target = 1 << v
    best: List[int] = []

    def extend(path: List[int], avail: int) -> bool:
        nonlocal best
        w = path[-1]
        if w == v:
            if len(path) > len(best):
                best = path.copy()
            return len(best) == G.order
        reach = _reach(bits, bits[w], avail)
        if not reach & target or len(path) + reach.bit_count() <= len(best):
            return False
        for x in _members(bits[w] & avail):
            path.append(x)
            stop = extend(path, avail & ~(1 << x))
            path.pop()
            if stop:
                return True
        return False

    extend([u], full & ~(1 << u))
    if not best:
        return OracleResult(0)
    return OracleResult(len(best), PathWitness(tuple(best)))
