"""Long paths through the apex construction, with the path-setting host catalog"""
import sys
from itertools import combinations
from pathlib import Path
from typing import Any, List, Optional, Set, Tuple

sys.path.append(str(Path(__file__).parent.parent))

from config.settings import ORACLE_CAP
from src.certificates import Certificate, validate_certificate
from src.decide import Decision, to_certificate
from src.families import (
    Embedding,
    JCSpec,
    K1TKSpec,
    K1TVSpec,
    clique_roles,
    components_within,
    make_embedding,
    split_components,
    degree_k_vertices,
    recognize_unchecked,
    sweep_catalog,
    try_h,
    try_h_independent,
    try_matching_host,
)
from src.graph_core import (
    Graph,
    GraphError,
    PreconditionError,
    WorkMeter,
    complete_graph,
    degree_profile,
    is_connected,
    join,
)
from src.longcycle import CycleWitness, PathWitness, find_long_cycle
from src.oracle import longest_path_order


def apex(G: Graph) -> Graph:
    """join(G, K_1) with the new vertex last (id n)"""
    return join(G, complete_graph(1))


def path_threshold(n: int, k: int) -> int:
    return min(n, 2 * k + 3)


def require_path_domain(G: Graph, k: int) -> None:
    if k < 1:
        raise PreconditionError("k", f"k = {k} must be at least 1")
    if not is_connected(G):
        raise PreconditionError("connected", "graph is not connected")
    second = degree_profile(G).second_min_degree
    if second is not None and second < k:
        raise PreconditionError("degree", f"more than one vertex has degree below k = {k}")


# Direct recognizers for the path catalog


def try_single_center(
    G: Graph, k: int, c: int, meter: Optional[WorkMeter] = None, allow_big: bool = True
) -> Optional[Embedding]:
    """G ⊆ K_1 + (tK_k ∪ K_{k+1} ∪ K_1) with center c.

    Without a component of order k + 1 the host is K_1 + (tK_k ∪ K_1).
    """
    split = split_components(G, (c,), cap=k + 1, max_over=0, meter=meter)
    if split is None:
        return None
    small, _ = split
    bigs = [comp for comp in small if len(comp) == k + 1]
    if len(bigs) > (1 if allow_big else 0):
        return None
    rest = [comp for comp in small if len(comp) <= k]
    assignment = {c: "apex/0"}
    clique_roles(assignment, "cl", rest)
    for comp in bigs:
        assignment.update({w: f"big/{i}" for i, w in enumerate(comp)})
    spec = K1TKSpec(max(1, len(rest)), k) if bigs else K1TVSpec(max(2, len(rest)), k)
    return make_embedding(spec, G.order, assignment)


def try_joined_centers(G: Graph, k: int, c1: int, meter: Optional[WorkMeter] = None) -> Optional[Embedding]:
    """G ⊆ joined centers of K_1 + sK_k and K_1 + (tK_k ∪ K_1), with c1 one of the centers.

    G - c1 has one component Y of order > k; c1 meets Y only in the other center c2.
    """
    split = split_components(G, (c1,), cap=k, max_over=1, meter=meter)
    if split is None:
        return None
    small, over = split
    if not over:
        return None
    Y = set(over[0])
    touching = [w for w in G.neighbor_list(c1) if w in Y]
    if len(touching) != 1:
        return None
    c2 = touching[0]
    parts = components_within(G, over[0], c2)
    if any(len(part) > k for part in parts):
        return None
    assignment = {c2: "apex/0", c1: "apex/1"}
    clique_roles(assignment, "s", parts)
    clique_roles(assignment, "t", small)
    return make_embedding(JCSpec(max(1, len(parts)), max(1, len(small)), k), G.order, assignment)


def _seeded_h(G, k, seed, tried, meter):
    A = tuple(G.neighbor_list(seed))
    if A in tried:
        return None
    tried.add(A)
    return try_h(G, k, A, meter)


def _seeded_center(attempt):
    def run(G, k, seed, tried: Set[Any], meter):
        for c in G.neighbor_list(seed):
            if c not in tried:
                tried.add(c)
                found = attempt(G, k, c, meter)
                if found is not None:
                    return found
        return None

    return run


def _seeded_matching(kind: str, apex_count: int, min_t: int):
    def run(G, k, seed, tried, meter):
        for apexes in combinations(G.neighbor_list(seed), apex_count):
            if apexes not in tried:
                tried.add(apexes)
                found = try_matching_host(G, apexes, kind, min_t)
                if found is not None:
                    return found
        return None

    return run


def _without_big(G, k, c, meter):
    return try_single_center(G, k, c, meter, allow_big=False)


def boundary_host(G: Graph, k: int, meter: Optional[WorkMeter] = None) -> Optional[Embedding]:
    """Host for n = 2k+2, where the longest path must stay below n: H(2k+2, 2k+1, k) or K_1 + (tK_k ∪ K_1)"""
    found = try_h_independent(G, k)
    if found is None:
        found = sweep_catalog(G, k, [("K1TV", _seeded_center(_without_big))], degree_k_vertices(G, k), meter)
    return found


def path_catalog(k: int) -> List[Tuple[str, Any]]:
    catalog = [
        ("H", _seeded_h),
        ("K1TK", _seeded_center(try_single_center)),
        ("JC", _seeded_center(try_joined_centers)),
    ]
    if k == 2:
        catalog += [("K1M", _seeded_matching("K1M", 1, 6)), ("K1SM", _seeded_matching("K1SM", 1, 6))]
    if k == 3:
        catalog.append(("K2M", _seeded_matching("K2M", 2, 7)))
    return catalog


def recognize_path_family(G: Graph, k: int) -> Optional[Embedding]:
    """Embedding into a path-setting host (longest path below min{n, 2k+3} vertices), or None"""
    require_path_domain(G, k)
    n = G.order
    if n <= 2 * k + 1:
        return None
    if n == 2 * k + 2:
        return boundary_host(G, k)
    return sweep_catalog(G, k, path_catalog(k), degree_k_vertices(G, k))


# Decision


def _path_from_cycle(cycle: CycleWitness, apex_id: int) -> PathWitness:
    order = list(cycle.cycle)
    if apex_id in order:
        at = order.index(apex_id)
        return PathWitness(tuple(order[at + 1 :] + order[:at]))
    return PathWitness(tuple(order[:-1]))


def long_path_witness(
    G: Graph, needed: int, cap: Optional[int] = None, budget: Optional[int] = None
) -> Tuple[Optional[PathWitness], str]:
    """A path on >= needed vertices: a long cycle of apex(G) first, then the exact oracle"""
    if needed <= 1:
        return PathWitness((0,)), "search"
    star = apex(G)
    found = find_long_cycle(star, needed + 1, budget=budget)
    if found is not None:
        return _path_from_cycle(found, G.order), "search"
    if G.order <= (ORACLE_CAP if cap is None else cap):
        result = longest_path_order(G, cap=cap)
        if result.value >= needed:
            return result.witness, "oracle"
    return None, "none"


def decide_path(
    G: Graph, k: int, want_witness: bool = True, cap: Optional[int] = None, budget: Optional[int] = None
) -> Decision:
    """T1 exactly when G has a path on min{n, 2k+3} vertices"""
    require_path_domain(G, k)
    n = G.order
    threshold = path_threshold(n, k)
    meter = WorkMeter()

    emb = None
    if n >= 2 * k + 3:
        long_cycle = recognize_unchecked(apex(G), k + 1, meter) is None
    elif n == 2 * k + 2:
        emb = boundary_host(G, k, meter)
        long_cycle = emb is None
    else:
        long_cycle = True

    if not long_cycle:
        if emb is None:
            emb = recognize_path_family(G, k)
        return Decision(threshold, 0, emb, "exact", meter.steps, "recognizer" if emb else "none")
    if not want_witness:
        return Decision(threshold, 1, None, "exact", meter.steps)
    witness, source = long_path_witness(G, threshold, cap, budget)
    return Decision(threshold, 1, witness, "exact", meter.steps, source)


def certify_path(
    G: Graph, k: int, want_witness: bool = True, cap: Optional[int] = None, budget: Optional[int] = None
) -> Certificate:
    decision = decide_path(G, k, want_witness, cap, budget)
    if decision.verdict == 0 and decision.evidence is None:
        raise GraphError(f"no path-setting host embeds G (n = {G.order}, k = {k}); the catalog misses this graph")
    cert = to_certificate(decision, G, k, "path")
    result = validate_certificate(G, cert)
    if not result:
        raise GraphError(f"certificate failed self-validation: {result.diagnostic}")
    return cert
