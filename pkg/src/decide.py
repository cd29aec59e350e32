"""Decisions for c(G) >= 2k+2: the linear fast path, the recognizer-based exact decision and min{2δ+2, n}"""
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Tuple, Union

sys.path.append(str(Path(__file__).parent.parent))

import numpy as np

from config.settings import FAST_MIN_K, ORACLE_CAP
from src.certificates import Certificate, NO_EVIDENCE, validate_certificate
from src.families import (
    Embedding,
    cycle_catalog,
    try_f,
    try_f1,
    try_h,
    try_h_independent,
    degree_k_vertices,
    recognize_unchecked,
    sweep_catalog,
)
from src.graph_core import Graph, GraphError, PreconditionError, WorkMeter, degree_profile, is_biconnected
from src.longcycle import CycleWitness, PathWitness, find_long_cycle
from src.oracle import has_cycle_at_least

Evidence = Union[CycleWitness, PathWitness, Embedding, None]


@dataclass(frozen=True)
class PreconditionReport:
    biconnected: bool
    k_max: int
    exceptional_vertex: Optional[int]
    n: int
    m: int

    def admits(self, k: int) -> bool:
        return self.biconnected and 2 <= k <= self.k_max


@dataclass(frozen=True)
class Decision:
    threshold: int
    verdict: int
    evidence: Evidence = None
    mode: str = "exact"
    work: int = 0
    witness_source: str = "none"

    @property
    def label(self) -> str:
        return f"T{self.verdict}"


def check_preconditions(G: Graph, k: int) -> PreconditionReport:
    """Biconnectivity and degree census for the near-minimum-degree condition (never raises)"""
    if G.order == 0:
        return PreconditionReport(False, 0, None, 0, 0)
    profile = degree_profile(G)
    k_max = profile.second_min_degree if profile.second_min_degree is not None else 0
    exceptional = profile.min_vertex if profile.min_degree < k else None
    return PreconditionReport(
        biconnected=is_biconnected(G).biconnected,
        k_max=int(k_max),
        exceptional_vertex=exceptional,
        n=G.order,
        m=G.size,
    )


def require_preconditions(
    G: Graph, k: int, min_order: int, report: Optional[PreconditionReport] = None
) -> PreconditionReport:
    """Raise PreconditionError unless G qualifies; a supplied report must describe G and is not recomputed"""
    if report is None:
        report = check_preconditions(G, k)
    elif (report.n, report.m) != (G.order, G.size):
        raise GraphError(f"precondition report for n = {report.n}, m = {report.m} does not describe this graph")
    if k < 2:
        raise PreconditionError("k", f"k = {k} must be at least 2")
    if not report.biconnected:
        raise PreconditionError("biconnected", "graph is not 2-connected")
    if k > report.k_max:
        raise PreconditionError("degree", f"k = {k} exceeds k_max = {report.k_max}: two vertices have degree below k")
    if G.order < min_order:
        raise PreconditionError("order", f"n = {G.order} must be at least {min_order}")
    return report


def long_cycle_witness(
    G: Graph, L: int, cap: Optional[int] = None, budget: Optional[int] = None
) -> Tuple[Optional[CycleWitness], str]:
    """Search first, then the exact oracle when n is within its cap"""
    found = find_long_cycle(G, L, budget=budget)
    if found is not None:
        return found, "search"
    if G.order <= (ORACLE_CAP if cap is None else cap):
        found = has_cycle_at_least(G, L, cap=cap)
        if found is not None:
            return found, "oracle"
    return None, "none"


def decide_exact(
    G: Graph, k: int, want_witness: bool = True, cap: Optional[int] = None, budget: Optional[int] = None
) -> Decision:
    """T0 exactly when G embeds into a host of the long-cycle catalog for (n, k)"""
    require_preconditions(G, k, 2 * k + 2)
    threshold = 2 * k + 2
    meter = WorkMeter()
    emb = recognize_unchecked(G, k, meter)
    if emb is not None:
        return Decision(threshold, 0, emb, "exact", meter.steps, "recognizer")
    if not want_witness:
        return Decision(threshold, 1, None, "exact", meter.steps)
    witness, source = long_cycle_witness(G, threshold, cap, budget)
    return Decision(threshold, 1, witness, "exact", meter.steps, source)


def _lowest_degree_vertices(G: Graph, count: int) -> np.ndarray:
    """The `count` vertices with smallest (degree, id), in that order"""
    n = G.order
    key = G.degrees.astype(np.int64) * n + np.arange(n, dtype=np.int64)
    if count < n:
        picked = np.argpartition(key, count - 1)[:count]
    else:
        picked = np.arange(n)
    return picked[np.argsort(key[picked])]


def decide_fast(G: Graph, k: int, preconditions: Optional[PreconditionReport] = None) -> Decision:
    """Linear-time decision for k >= 5; T0 evidence is an embedding, T1 is verdict-only.

    Pass the report of an earlier check_preconditions(G, k) to skip the biconnectivity DFS.
    """
    if k < FAST_MIN_K:
        raise PreconditionError("k", f"fast decision needs k >= {FAST_MIN_K}, got {k}")
    require_preconditions(G, k, 2 * k + 2, preconditions)
    n = G.order
    threshold = 2 * k + 2
    meter = WorkMeter()

    def found(emb: Optional[Embedding]) -> Decision:
        if emb is None:
            return Decision(threshold, 1, None, "fast", meter.steps)
        return Decision(threshold, 0, emb, "fast", meter.steps, "recognizer")

    if G.size >= 2 * k * n:
        return found(None)
    meter.add(n)
    lowest = _lowest_degree_vertices(G, min(k + 3, n))
    seeds = [int(v) for v in lowest if G.degree(int(v)) == k]
    if not seeds:
        return found(None)

    x = seeds[0]
    nbrs = G.neighbor_list(x)
    meter.add(len(nbrs))
    high = [v for v in nbrs if G.degree(v) >= k + 2]
    emb = None
    if len(high) == k:
        emb = try_h(G, k, nbrs, meter)
    elif len(high) == 2:
        u, v = high
        emb = try_f1(G, k, u, v, meter) or try_f(G, k, u, v, meter) or try_f(G, k, v, u, meter)
    if emb is None:
        emb = sweep_catalog(G, k, cycle_catalog(k), degree_k_vertices(G, k, limit=k + 3), meter)
    return found(emb)


def solve_min_circumference(
    G: Graph, want_witness: bool = True, cap: Optional[int] = None, budget: Optional[int] = None
) -> Decision:
    """Decide c(G) >= min{2δ+2, n} for a 2-connected G with k = δ(G)"""
    if not is_biconnected(G).biconnected:
        raise PreconditionError("biconnected", "graph is not 2-connected")
    n = G.order
    k = int(G.degrees.min())
    if k < 2:
        raise PreconditionError("degree", f"minimum degree {k} is below 2")
    threshold = min(2 * k + 2, n)

    if n >= 2 * k + 2:
        if k >= FAST_MIN_K:
            decision = decide_fast(G, k)
            if decision.verdict == 1 and want_witness:
                witness, source = long_cycle_witness(G, threshold, cap, budget)
                return Decision(threshold, 1, witness, "fast", decision.work, source)
            return decision
        return decide_exact(G, k, want_witness, cap, budget)

    if n == 2 * k + 1:
        emb = try_h_independent(G, k)
        if emb is not None:
            return Decision(threshold, 0, emb, "exact", G.size, "recognizer")
    if not want_witness:
        return Decision(threshold, 1, None, "exact", G.size)
    witness, source = long_cycle_witness(G, threshold, cap, budget)
    return Decision(threshold, 1, witness, "exact", G.size, source)


def to_certificate(decision: Decision, G: Graph, k: int, problem: str) -> Certificate:
    evidence = decision.evidence.to_json() if decision.evidence is not None else dict(NO_EVIDENCE)
    return Certificate(
        k=k,
        n=G.order,
        threshold=decision.threshold,
        verdict=decision.label,
        mode=decision.mode,
        problem=problem,
        witness_source=decision.witness_source if decision.evidence is not None else "none",
        evidence=evidence,
        work=decision.work,
    )


def _status(message: str) -> None:
    print(message, file=sys.stderr)


def certify(
    G: Graph,
    k: Optional[int] = None,
    want_witness: bool = True,
    mode: str = "auto",
    problem: str = "cycle",
    cap: Optional[int] = None,
    budget: Optional[int] = None,
    progress_callback: Optional[Callable] = None,
    verbose: bool = False,
) -> Certificate:
    """Decide, attach validated evidence and re-check the result before emitting it.

    mode is "fast", "exact" or "auto" (fast when k >= 5). problem "min-cycle"
    ignores k and uses the minimum degree.
    """

    def update(message: str, step: str) -> None:
        if progress_callback:
            progress_callback(message, 0, 0, step)
        if verbose:
            _status(message)

    if mode not in ("auto", "fast", "exact"):
        raise GraphError(f"unknown mode {mode!r}")
    if problem == "min-cycle":
        update("🔍 Solving the min{2δ+2, n} problem...", "decide")
        decision = solve_min_circumference(G, want_witness, cap, budget)
        k = int(G.degrees.min())
    elif problem == "cycle":
        if k is None:
            raise GraphError("k is required for the cycle problem")
        use_fast = mode == "fast" or (mode == "auto" and k >= FAST_MIN_K)
        update(f"🔍 Running the {'fast' if use_fast else 'exact'} decision for k = {k}...", "decide")
        if use_fast:
            decision = decide_fast(G, k)
            if decision.verdict == 1 and want_witness:
                update("🔍 Looking for a long cycle witness...", "witness")
                witness, source = long_cycle_witness(G, decision.threshold, cap, budget)
                decision = Decision(decision.threshold, 1, witness, "fast", decision.work, source)
        else:
            decision = decide_exact(G, k, want_witness, cap, budget)
    else:
        raise GraphError(f"certify handles the cycle problems, got {problem!r}")

    if decision.verdict == 1 and want_witness and decision.evidence is None:
        update("⚠️ No witness within the search budget and oracle cap; emitting a verdict-only certificate", "witness")

    cert = to_certificate(decision, G, k, problem)
    result = validate_certificate(G, cert)
    if not result:
        raise GraphError(f"certificate failed self-validation: {result.diagnostic}")
    update(f"✅ {cert.verdict} certified ({cert.evidence['kind']} evidence)", "done")
    return cert
