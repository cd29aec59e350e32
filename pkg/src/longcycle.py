"""Rotation-extension search for long paths and vine closure of crossing ears into long cycles"""
import sys
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

sys.path.append(str(Path(__file__).parent.parent))

import numpy as np

from config.settings import SEARCH_BUDGET
from src.graph_core import CheckResult, Graph, GraphError, WorkMeter, connected_components


class PathError(GraphError):
    """Invalid rotation pivot, crossing pair or vine"""


@dataclass(frozen=True)
class CycleWitness:
    cycle: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.cycle)

    def to_json(self) -> Dict[str, Any]:
        return {"kind": "cycle", "vertices": list(self.cycle)}


@dataclass(frozen=True)
class PathWitness:
    vertices: Tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.vertices)

    def to_json(self) -> Dict[str, Any]:
        return {"kind": "path", "vertices": list(self.vertices)}


def _walk_problem(G: Graph, seq: Sequence[Any]) -> Optional[str]:
    n = G.order
    for v in seq:
        if type(v) is not int and not isinstance(v, np.integer):
            return f"vertex {v!r} is not an integer id"
        if not 0 <= v < n:
            return f"vertex {v} outside [0, {n})"
    if len(set(seq)) != len(seq):
        return "vertices repeat"
    for a, b in zip(seq, seq[1:]):
        if not G.has_edge(int(a), int(b)):
            return f"consecutive vertices {a} and {b} are not adjacent"
    return None


def validate_cycle(G: Graph, cycle: Sequence[int], min_length: int = 3) -> CheckResult:
    """Simple, consecutive vertices adjacent, closing edge present, length >= min_length"""
    if len(cycle) < max(3, min_length):
        return CheckResult(False, f"cycle has {len(cycle)} vertices, needs at least {max(3, min_length)}")
    problem = _walk_problem(G, cycle)
    if problem is None and not G.has_edge(int(cycle[-1]), int(cycle[0])):
        problem = f"closing edge {cycle[-1]}-{cycle[0]} missing"
    return CheckResult(problem is None, problem or "")


def validate_path(G: Graph, path: Sequence[int], min_order: int = 1) -> CheckResult:
    """Simple path with consecutive vertices adjacent and at least min_order vertices"""
    if len(path) < max(1, min_order):
        return CheckResult(False, f"path has {len(path)} vertices, needs at least {max(1, min_order)}")
    problem = _walk_problem(G, path)
    return CheckResult(problem is None, problem or "")


class PathState:
    """A path x_0 .. x_{m-1} of G with its endpoint neighborhoods indexed along the path"""

    def __init__(self, graph: Graph, order: Sequence[int]):
        order = tuple(int(v) for v in order)
        if not order:
            raise PathError("path must contain at least one vertex")
        problem = _walk_problem(graph, order)
        if problem:
            raise PathError(f"not a path: {problem}")
        self.graph = graph
        self.order = order
        self.position = {v: i for i, v in enumerate(order)}
        self.first_neighbors = self._indices_of(order[0])
        self.last_neighbors = self._indices_of(order[-1])

    def _indices_of(self, v: int) -> Tuple[int, ...]:
        pos = self.position
        return tuple(sorted(pos[w] for w in self.graph.neighbor_list(v) if w in pos))

    @property
    def m(self) -> int:
        return len(self.order)

    @property
    def shifted_first(self) -> Tuple[int, ...]:
        """Indices w with x_{w+1} adjacent to x_0"""
        return tuple(w - 1 for w in self.first_neighbors)

    @property
    def shifted_last(self) -> Tuple[int, ...]:
        """Indices w with x_{w-1} adjacent to x_{m-1}"""
        return tuple(w + 1 for w in self.last_neighbors)

    def is_disjoint(self) -> bool:
        """No crossing pair: N⁻(x_0) ∩ N(x_{m-1}) and N⁺(x_{m-1}) ∩ N(x_0) are both empty"""
        last = set(self.last_neighbors)
        first = set(self.first_neighbors)
        return not (set(self.shifted_first) & last) and not (set(self.shifted_last) & first)

    def off_path_neighbors(self, v: int) -> List[int]:
        return [w for w in self.graph.neighbor_list(v) if w not in self.position]

    def __repr__(self) -> str:
        return f"PathState({list(self.order)})"


def rotate(state: PathState, pivot: int, end: Optional[str] = None) -> PathState:
    """Posa rotation at an endpoint adjacent to `pivot`.

    Head: x_{j-1} .. x_0 x_j .. x_{m-1}. Tail: x_0 .. x_i x_{m-1} .. x_{i+1}.
    `end` ("head" or "tail") picks the endpoint when the pivot is adjacent to both.
    """
    if pivot not in state.position:
        raise PathError(f"pivot {pivot} is not on the path")
    p = state.position[pivot]
    m = state.m
    head_ok = p >= 2 and p in state.first_neighbors
    tail_ok = p <= m - 3 and p in state.last_neighbors
    if end is None:
        end = "head" if head_ok else "tail"
    if end == "head" and head_ok:
        order = state.order[:p][::-1] + state.order[p:]
    elif end == "tail" and tail_ok:
        order = state.order[: p + 1] + state.order[p + 1 :][::-1]
    else:
        raise PathError(f"pivot {pivot} is not a rotation pivot for the {end} endpoint")
    return PathState(state.graph, order)


def close_crossing(state: PathState, i: int, j: int) -> CycleWitness:
    """Cycle x_0 .. x_i x_{m-1} .. x_j x_0 for x_i ~ x_{m-1}, x_j ~ x_0, i < j"""
    if not 0 <= i < j < state.m:
        raise PathError(f"crossing indices must satisfy 0 <= i < j < m, got ({i}, {j})")
    if i not in state.last_neighbors:
        raise PathError(f"x_{i} is not adjacent to the tail")
    if j not in state.first_neighbors:
        raise PathError(f"x_{j} is not adjacent to the head")
    cycle = state.order[: i + 1] + state.order[j:][::-1]
    result = validate_cycle(state.graph, cycle)
    if not result:
        raise PathError(f"crossing ({i}, {j}) does not close: {result.diagnostic}")
    return CycleWitness(cycle)


@dataclass(frozen=True)
class Ear:
    """A path leaving P at x_s and re-entering at x_t through vertices off P"""

    s: int
    t: int
    interior: Tuple[int, ...]


@dataclass(frozen=True)
class Vine:
    ears: Tuple[Ear, ...]

    @property
    def r(self) -> int:
        return len(self.ears)


def _off_path_components(state: PathState) -> List[Tuple[List[int], List[int]]]:
    """Components of G - V(P), each with the sorted path indices it attaches to"""
    result = []
    pos = state.position
    for comp in connected_components(state.graph, removed=state.order):
        attach = sorted({pos[w] for v in comp for w in state.graph.neighbor_list(v) if w in pos})
        if attach:
            result.append((comp, attach))
    return result


def _route_inside(G: Graph, comp: Sequence[int], source_nbr: int, target_nbr: int) -> Tuple[int, ...]:
    """Vertices of a path inside `comp` from a neighbor of source_nbr to a neighbor of target_nbr"""
    inside = set(comp)
    starts = [v for v in G.neighbor_list(source_nbr) if v in inside]
    goals = {v for v in G.neighbor_list(target_nbr) if v in inside}
    parent: Dict[int, Optional[int]] = {v: None for v in starts}
    queue = deque(starts)
    while queue:
        v = queue.popleft()
        if v in goals:
            route = [v]
            while parent[route[-1]] is not None:
                route.append(parent[route[-1]])
            return tuple(reversed(route))
        for w in G.neighbor_list(v):
            if w in inside and w not in parent:
                parent[w] = v
                queue.append(w)
    raise PathError("attachment points of a component are not joined inside it")


def _next_ear(state: PathState, bound: int, components) -> Optional[Ear]:
    """Ear with s < bound < t and t as large as possible (then s as small as possible)"""
    best: Optional[Tuple[int, int, Any]] = None
    pos = state.position
    for s in range(bound):
        for w in state.graph.neighbor_list(state.order[s]):
            t = pos.get(w)
            if t is not None and t > bound and (best is None or (t, -s) > (best[0], -best[1])):
                best = (t, s, None)
    for comp, attach in components:
        s, t = attach[0], attach[-1]
        if s < bound < t and (best is None or (t, -s) > (best[0], -best[1])):
            best = (t, s, comp)
    if best is None:
        return None
    t, s, comp = best
    interior = () if comp is None else _route_inside(state.graph, comp, state.order[s], state.order[t])
    return Ear(s=s, t=t, interior=interior)


def grow_vine(G: Graph, state: PathState, g: int, h: int) -> Vine:
    """Ears Q_1..Q_r with s_1 < g < t_1, s_{i+1} < t_i < t_{i+1} and t_{r-1} <= h < t_r.

    Each t_i is the largest reachable re-entry index, so consecutive-but-one
    ears satisfy t_i <= s_{i+2}.
    """
    if state.graph is not G:
        state = PathState(G, state.order)
    if g >= h:
        raise PathError(f"vine not required: g = {g} >= h = {h}")
    components = _off_path_components(state)
    ears: List[Ear] = []
    bound = g
    while True:
        ear = _next_ear(state, bound, components)
        if ear is None:
            raise PathError(f"no ear crosses index {bound}; graph is not 2-connected")
        ears.append(ear)
        if ear.t > h:
            break
        bound = ear.t
    vine = Vine(tuple(ears))
    problem = _vine_problem(vine, g, h)
    if problem:
        raise PathError(f"vine construction failed: {problem}")
    return vine


def _vine_problem(vine: Vine, g: int, h: int) -> Optional[str]:
    ears = vine.ears
    if not ears:
        return "empty vine"
    if not ears[0].s < g < ears[0].t:
        return "first ear does not straddle g"
    for a, b in zip(ears, ears[1:]):
        if not (b.s < a.t < b.t):
            return f"ears ({a.s},{a.t}) and ({b.s},{b.t}) do not chain"
    for a, c in zip(ears, ears[2:]):
        if c.s < a.t:
            return f"ears ({a.s},{a.t}) and ({c.s},{c.t}) overlap on the path"
    if not ears[-1].t > h or (len(ears) > 1 and ears[-2].t > h):
        return "last ear does not end the vine past h"
    return None


def vine_merge(state: PathState, vine: Vine) -> CycleWitness:
    """Cycle through x_0, x_{m-1} and every ear.

    Odd ears run forward along P, even ears are walked backward; the two halves
    meet at j_0 (largest tail neighbor before t_r) and i_0 (smallest head
    neighbor after s_1).
    """
    ears = vine.ears
    r = len(ears)
    if r == 0:
        raise PathError("vine has no ears")
    i0 = next((w for w in state.first_neighbors if w > ears[0].s), None)
    j0 = next((w for w in reversed(state.last_neighbors) if w < ears[-1].t), None)
    if i0 is None or j0 is None:
        raise PathError("endpoints lack the neighbors needed to close the vine")

    x = state.order
    seq: List[int] = list(x[: ears[0].s + 1])
    forward_end = state.m - 1 if r % 2 else j0
    for idx in range(0, r, 2):
        ear = ears[idx]
        seq.extend(ear.interior)
        stop = ears[idx + 2].s if idx + 2 < r else forward_end
        seq.extend(x[ear.t : stop + 1])

    backward_start = j0 if r % 2 else state.m - 1
    evens = list(range(r - 1 if r % 2 else r, 0, -2))
    if not evens:
        seq.extend(x[i0 : backward_start + 1][::-1])
    for pos, number in enumerate(evens):
        ear = ears[number - 1]
        if pos == 0:
            seq.extend(x[ear.t : backward_start + 1][::-1])
        seq.extend(reversed(ear.interior))
        bottom = ears[number - 3].t if number > 2 else i0
        seq.extend(x[bottom : ear.s + 1][::-1])

    result = validate_cycle(state.graph, seq)
    if not result:
        raise PathError(f"vine does not merge into a cycle: {result.diagnostic}")
    return CycleWitness(tuple(seq))


# Search


def best_crossing(state: PathState) -> Optional[Tuple[int, int]]:
    """Crossing pair (i, j), i < j, maximizing (i + 1) + (m - j)"""
    last = state.last_neighbors
    best = None
    k = -1
    for j in state.first_neighbors:
        while k + 1 < len(last) and last[k + 1] < j:
            k += 1
        if k >= 0:
            i = last[k]
            if best is None or (i + 1) + (state.m - j) > (best[0] + 1) + (state.m - best[1]):
                best = (i, j)
    return best


def _closures(state: PathState) -> List[Tuple[int, ...]]:
    """Cycles available from a path without leaving its vertex set"""
    x = state.order
    m = state.m
    found: List[Tuple[int, ...]] = []
    if m >= 3 and state.graph.has_edge(x[0], x[-1]):
        found.append(x)
    if state.first_neighbors and state.first_neighbors[-1] >= 2:
        found.append(x[: state.first_neighbors[-1] + 1])
    if state.last_neighbors and state.last_neighbors[0] <= m - 3:
        found.append(x[state.last_neighbors[0] :])
    crossing = best_crossing(state)
    if crossing is not None:
        i, j = crossing
        found.append(x[: i + 1] + x[j:][::-1])
    g = state.first_neighbors[-1] if state.first_neighbors else 0
    h = state.last_neighbors[0] if state.last_neighbors else m - 1
    if m >= 4 and g < h and state.is_disjoint():
        try:
            found.append(vine_merge(state, grow_vine(state.graph, state, g, h)).cycle)
        except PathError:
            pass
    return found


def _extend_greedy(G: Graph, order: List[int], on_path: set, meter: WorkMeter) -> None:
    """Extend the tail, then the head, while an endpoint has an off-path neighbor"""
    for _ in range(2):
        while True:
            tail = order[-1]
            nbrs = G.neighbor_list(tail)
            meter.add(len(nbrs))
            free = [w for w in nbrs if w not in on_path]
            if not free:
                break
            nxt = min(free, key=lambda w: (sum(1 for u in G.neighbor_list(w) if u not in on_path), w))
            order.append(nxt)
            on_path.add(nxt)
        order.reverse()


def _open_cycle(G: Graph, cycle: Sequence[int]) -> Optional[List[int]]:
    """Longer path from a cycle with an off-cycle neighbor: y x_i x_{i+1} .. x_{i-1}"""
    members = set(cycle)
    for i, v in enumerate(cycle):
        for w in G.neighbor_list(v):
            if w not in members:
                return [w] + list(cycle[i:]) + list(cycle[:i])
    return None


def find_long_cycle(G: Graph, L: int, budget: Optional[int] = None) -> Optional[CycleWitness]:
    """A cycle of length >= L, or None when the bounded search gives up (no claim)"""
    if L < 3:
        raise GraphError(f"cycle threshold L = {L} must be at least 3")
    budget = SEARCH_BUDGET if budget is None else budget
    if L > G.order:
        return None
    meter = WorkMeter()
    degrees = G.degrees
    starts = sorted(range(G.order), key=lambda v: (-int(degrees[v]), v))

    for start in starts:
        if meter.steps > budget:
            break
        order = [start]
        on_path = {start}
        _extend_greedy(G, order, on_path, meter)
        seen = set()
        queue = deque([PathState(G, order)])
        while queue and meter.steps <= budget:
            state = queue.popleft()
            if state.order in seen:
                continue
            seen.add(state.order)
            meter.add(state.m + len(G.neighbor_list(state.order[0])) + len(G.neighbor_list(state.order[-1])))

            if state.off_path_neighbors(state.order[0]) or state.off_path_neighbors(state.order[-1]):
                grown = list(state.order)
                _extend_greedy(G, grown, set(grown), meter)
                queue.appendleft(PathState(G, grown))
                continue

            for cycle in _closures(state):
                if len(cycle) >= L:
                    return CycleWitness(tuple(cycle))
                opened = _open_cycle(G, cycle)
                if opened is not None and len(opened) > state.m:
                    queue.appendleft(PathState(G, opened))

            for p in state.first_neighbors:
                if p >= 2:
                    queue.append(rotate(state, state.order[p], end="head"))
            for p in state.last_neighbors:
                if p <= state.m - 3:
                    queue.append(rotate(state, state.order[p], end="tail"))
    return None
