"""Turán number of {S_{k+2}, P_{2k+1}}: bound, extremal construction and forbidden-subgraph checks"""
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from math import ceil
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

sys.path.append(str(Path(__file__).parent.parent))

import numpy as np

from config.settings import ORACLE_CAP, TURAN_SEARCH_BUDGET
from src.graph_core import (
    BudgetExceededError,
    CheckResult,
    Graph,
    PreconditionError,
    circulant_graph,
    connected_components,
    disjoint_union,
    induced,
)
from src.oracle import longest_path_order
from src.pathver import long_path_witness, recognize_path_family


def _require_range(n: int, k: int) -> None:
    if k < 1:
        raise PreconditionError("k", f"k = {k} must be at least 1")
    if n < 2 * k + 2:
        raise PreconditionError("order", f"n = {n} must be at least 2k + 2 = {2 * k + 2}")


def turan_bound(n: int, k: int) -> int:
    """ex(n, {S_{k+2}, P_{2k+1}}) = floor(kn / 2) for n >= 2k + 2"""
    _require_range(n, k)
    return k * n // 2


@dataclass(frozen=True)
class ForbiddenReport:
    """has_path is None when a component is beyond the oracle cap and no long path was found"""

    has_star: bool
    has_path: Optional[bool]

    @property
    def free(self) -> bool:
        return not self.has_star and self.has_path is False


def check_forbidden(G: Graph, k: int, cap: Optional[int] = None) -> ForbiddenReport:
    """Whether G contains S_{k+2} = K_{1,k+1} and whether it contains P_{2k+1}"""
    if k < 1:
        raise PreconditionError("k", f"k = {k} must be at least 1")
    has_star = bool(G.order) and int(G.degrees.max()) >= k + 1
    limit = ORACLE_CAP if cap is None else cap
    need = 2 * k + 1
    unknown = False
    for comp in connected_components(G):
        if len(comp) < need:
            continue
        sub, _ = induced(G, comp)
        if len(comp) <= limit:
            if longest_path_order(sub, cap=limit).value >= need:
                return ForbiddenReport(has_star, True)
        elif long_path_witness(sub, need, cap=limit)[0] is not None:
            return ForbiddenReport(has_star, True)
        else:
            unknown = True
    return ForbiddenReport(has_star, None if unknown else False)


def turan_parts(n: int, k: int) -> List[int]:
    """Component orders of the extremal construction.

    ceil(n / 2k) balanced parts, all in [k+1, 2k]; for odd k equal odd parts are
    paired into (o-1, o+1) so at most one odd part remains. k = 1 uses edges plus
    one three-vertex part when n is odd.
    """
    _require_range(n, k)
    if k == 1:
        return [2] * (n // 2) if n % 2 == 0 else [2] * ((n - 3) // 2) + [3]
    count = ceil(n / (2 * k))
    base, extra = divmod(n, count)
    parts = [base + 1] * extra + [base] * (count - extra)
    if k % 2:
        odd = [i for i, p in enumerate(parts) if p % 2]
        for a, b in zip(odd[0::2], odd[1::2]):
            parts[a] -= 1
            parts[b] += 1
    return sorted(parts)


def _regular_part(p: int, k: int) -> Graph:
    """k-regular on p vertices, or one vertex of degree k-1 when p and k are odd"""
    offsets = list(range(1, k // 2 + 1))
    if k % 2 == 0:
        return circulant_graph(p, offsets)
    if p % 2 == 0:
        return circulant_graph(p, offsets + [p // 2])
    half = (p - 1) // 2
    base = circulant_graph(p, offsets) if offsets else Graph.from_edges(p, ())
    matching = np.column_stack([np.arange(half), np.arange(half) + half])
    return Graph.from_edges(p, np.concatenate([base.edges, matching]))


def build_turan_extremal(n: int, k: int) -> Graph:
    """{S_{k+2}, P_{2k+1}}-free graph on n vertices with floor(kn/2) edges"""
    return disjoint_union([_regular_part(p, k) for p in turan_parts(n, k)])


def components_bound_check(G: Graph, k: int) -> CheckResult:
    """Every component of an extremal {S_{k+2}, P_{2k+1}}-free graph has at most 2k vertices.

    A larger component is checked against the path-setting host catalog (with
    parameter k - 1) and the result is part of the diagnostic.
    """
    n = G.order
    _require_range(n, k)
    if G.size != turan_bound(n, k):
        raise PreconditionError("edges", f"graph has {G.size} edges, extremal graphs have {turan_bound(n, k)}")
    report = check_forbidden(G, k)
    if not report.free:
        raise PreconditionError("forbidden", f"graph is not {{S_{k + 2}, P_{2 * k + 1}}}-free: {report}")
    for comp in connected_components(G):
        if len(comp) > 2 * k:
            sub, _ = induced(G, comp)
            try:
                host = recognize_path_family(sub, k - 1) if k >= 2 else None
            except PreconditionError:
                host = None
            where = f"embeds into {host.spec.to_json()}" if host else "embeds into no path-setting host"
            return CheckResult(False, f"component of order {len(comp)} > 2k = {2 * k}; it {where}")
    return CheckResult(True)


# Exhaustive confirmation


@dataclass
class TuranReport:
    n: int
    k: int
    bound: int
    overfull_free_graphs: int
    overfull_search_nodes: int
    construction_edges: int
    construction_free: bool
    construction_parts: List[int] = field(default_factory=list)
    extremal_graphs: Optional[int] = None
    extremal_search_nodes: int = 0
    extremal_violations: List[List[Tuple[int, int]]] = field(default_factory=list)
    extremal_skipped: bool = False

    @property
    def verified(self) -> bool:
        return (
            self.overfull_free_graphs == 0
            and self.construction_edges == self.bound
            and self.construction_free
            and not self.extremal_violations
        )

    def to_json(self) -> Dict[str, Any]:
        data = asdict(self)
        data["verified"] = self.verified
        return data


class _DegreeCappedSearch:
    """Edge subsets with max degree <= k and exactly `target` edges, pairs taken in lex order.

    min_degree prunes each vertex once all its pairs are decided; `slack` is the
    number of vertices allowed to end one below k.
    """

    def __init__(self, n: int, k: int, target: int, budget: int, slack: Optional[int]):
        self.n, self.k, self.target, self.budget = n, k, target, budget
        self.slack = slack
        self.pairs = list(combinations(range(n), 2))
        self.last_pair = {u: max(i for i, p in enumerate(self.pairs) if u in p) for u in range(n)}
        self.deg = [0] * n
        self.chosen: List[Tuple[int, int]] = []
        self.nodes = 0
        self.found: List[List[Tuple[int, int]]] = []

    def run(self, start: int = 0) -> List[List[Tuple[int, int]]]:
        self._step(start, self.slack)
        return self.found

    def _capacity(self) -> int:
        return sum(self.k - d for d in self.deg) // 2

    def _step(self, i: int, slack: Optional[int]) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceededError(f"edge-subset search exceeded {self.budget} nodes")
        need = self.target - len(self.chosen)
        if need == 0:
            if slack is None or all(d >= self.k - 1 for d in self.deg):
                self.found.append(list(self.chosen))
            return
        if need > len(self.pairs) - i or need > self._capacity():
            return
        u, v = self.pairs[i]
        for include in (True, False):
            if include and (self.deg[u] >= self.k or self.deg[v] >= self.k):
                continue
            if include:
                self.deg[u] += 1
                self.deg[v] += 1
                self.chosen.append((u, v))
            remaining = slack
            ok = True
            if slack is not None:
                for w in (u, v):
                    if self.last_pair[w] == i and self.deg[w] < self.k:
                        if self.deg[w] < self.k - 1 or remaining == 0:
                            ok = False
                        else:
                            remaining -= 1
            if ok:
                self._step(i + 1, remaining)
            if include:
                self.deg[u] -= 1
                self.deg[v] -= 1
                self.chosen.pop()


def _extremal_shard(args: Tuple[int, int, Tuple[int, ...], int]) -> Tuple[int, int, List[List[Tuple[int, int]]]]:
    """Free graphs with floor(kn/2) edges whose vertex 0 has the given neighborhood"""
    n, k, nbrs, budget = args
    bound = k * n // 2
    slack = k * n - 2 * bound
    search = _DegreeCappedSearch(n, k, bound, budget, slack)
    if len(nbrs) < k:
        search.slack -= 1
    for v in nbrs:
        search.deg[0] += 1
        search.deg[v] += 1
        search.chosen.append((0, v))
    search.run(start=n - 1)
    free = 0
    violations = []
    for edges in search.found:
        G = Graph.from_edges(n, edges)
        if check_forbidden(G, k).free:
            free += 1
            if any(len(comp) > 2 * k for comp in connected_components(G)):
                violations.append(edges)
    return free, search.nodes, violations


def verify_turan(
    n: int, k: int, budget: Optional[int] = None, jobs: int = 1, confirm_extremal: bool = True
) -> TuranReport:
    """Check the bound both ways and (within budget) the component structure of extremal graphs.

    Overfull side: no graph with max degree <= k has floor(kn/2) + 1 edges, so
    every such graph contains S_{k+2}. The degree-capped search confirms it.
    """
    bound = turan_bound(n, k)
    budget = TURAN_SEARCH_BUDGET if budget is None else budget

    overfull = _DegreeCappedSearch(n, k, bound + 1, budget, slack=None)
    overfull_graphs = overfull.run()

    G = build_turan_extremal(n, k)
    report = TuranReport(
        n=n,
        k=k,
        bound=bound,
        overfull_free_graphs=len(overfull_graphs),
        overfull_search_nodes=overfull.nodes,
        construction_edges=G.size,
        construction_free=check_forbidden(G, k).free,
        construction_parts=turan_parts(n, k),
    )
    if not confirm_extremal:
        return report

    shards = []
    for size in (k, k - 1):
        if size >= 0 and (size == k or k * n - 2 * bound == 1):
            shards.extend((n, k, nbrs, budget) for nbrs in combinations(range(1, n), size))
    try:
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_extremal_shard, shards))
        else:
            results = [_extremal_shard(shard) for shard in shards]
    except BudgetExceededError:
        report.extremal_skipped = True
        return report

    report.extremal_graphs = sum(r[0] for r in results)
    report.extremal_search_nodes = sum(r[1] for r in results)
    for r in results:
        report.extremal_violations.extend(r[2])
    return report
