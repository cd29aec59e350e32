"""Extremal host families: constructors, edge counts, circumference bounds and recognizers"""
import sys
from dataclasses import asdict, dataclass, fields
from itertools import combinations, permutations
from pathlib import Path
from typing import Any, ClassVar, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

sys.path.append(str(Path(__file__).parent.parent))

import numpy as np

from src.graph_core import (
    CheckResult,
    Graph,
    GraphError,
    PreconditionError,
    WorkMeter,
    degree_profile,
    is_biconnected,
)


class FamilySpecError(GraphError):
    pass


# Family specifications


@dataclass(frozen=True)
class FamilySpec:
    kind: ClassVar[str] = ""

    def validate(self) -> None:
        raise NotImplementedError

    @property
    def order(self) -> int:
        raise NotImplementedError

    def to_json(self) -> Dict[str, Any]:
        return {"kind": self.kind, **asdict(self)}

    def _require(self, condition: bool, invariant: str) -> None:
        if not condition:
            raise FamilySpecError(f"{self.kind}{self._params()} violates {invariant}")

    def _params(self) -> str:
        return "{" + ",".join(str(v) for v in asdict(self).values()) + "}"


@dataclass(frozen=True)
class HSpec(FamilySpec):
    """A ∪ B ∪ C with A ∪ C a clique, B independent and A–B complete"""

    kind: ClassVar[str] = "H"
    n: int
    ell: int
    a: int

    @property
    def sizes(self) -> Tuple[int, int, int]:
        return self.a, self.n - self.ell + self.a, self.ell - 2 * self.a

    @property
    def order(self) -> int:
        return self.n

    def validate(self) -> None:
        self._require(self.a >= 1, "a >= 1")
        self._require(self.ell >= 2 * self.a, "ell >= 2a")
        self._require(self.n >= self.ell - self.a, "n >= ell - a")


@dataclass(frozen=True)
class FSpec(FamilySpec):
    """Apex triangle x, y, z with s cliques K_{k-1} and one K_1 on x and z, t cliques on y and z"""

    kind: ClassVar[str] = "F"
    s: int
    t: int
    k: int

    @property
    def order(self) -> int:
        return 4 + (self.s + self.t) * (self.k - 1)

    def validate(self) -> None:
        self._require(self.s >= 1, "s >= 1")
        self._require(self.t >= 1, "t >= 1")
        self._require(self.k >= 2, "k >= 2")


@dataclass(frozen=True)
class F1Spec(FamilySpec):
    """K_2 + (tK_{k-1} ∪ K_k ∪ K_1)"""

    kind: ClassVar[str] = "F1"
    t: int
    k: int

    @property
    def order(self) -> int:
        return 3 + self.t * (self.k - 1) + self.k

    def validate(self) -> None:
        self._require(self.t >= 1, "t >= 1")
        self._require(self.k >= 2, "k >= 2")


@dataclass(frozen=True)
class FVSpec(FamilySpec):
    """K_2 + (tK_{k-1} ∪ K_k)"""

    kind: ClassVar[str] = "FV"
    t: int
    k: int

    @property
    def order(self) -> int:
        return 2 + self.t * (self.k - 1) + self.k

    def validate(self) -> None:
        self._require(self.t >= 1, "t >= 1")
        self._require(self.k >= 2, "k >= 2")


@dataclass(frozen=True)
class K2MSpec(FamilySpec):
    kind: ClassVar[str] = "K2M"
    t: int

    @property
    def order(self) -> int:
        return 2 + self.t

    def validate(self) -> None:
        self._require(self.t >= 6, "t >= 6")


@dataclass(frozen=True)
class K2SMSpec(FamilySpec):
    kind: ClassVar[str] = "K2SM"
    s: int
    t: int

    @property
    def order(self) -> int:
        return 2 + self.s + self.t

    def validate(self) -> None:
        self._require(self.s >= 1, "s >= 1")
        self._require(self.t >= 0, "t >= 0")
        self._require(self.s + self.t >= 6, "s + t >= 6")


@dataclass(frozen=True)
class K3MSpec(FamilySpec):
    kind: ClassVar[str] = "K3M"
    t: int

    @property
    def order(self) -> int:
        return 3 + self.t

    def validate(self) -> None:
        self._require(self.t >= 7, "t >= 7")


@dataclass(frozen=True)
class K1TKSpec(FamilySpec):
    """K_1 + (tK_k ∪ K_{k+1} ∪ K_1)"""

    kind: ClassVar[str] = "K1TK"
    t: int
    k: int

    @property
    def order(self) -> int:
        return 3 + self.t * self.k + self.k

    def validate(self) -> None:
        self._require(self.t >= 1, "t >= 1")
        self._require(self.k >= 1, "k >= 1")


@dataclass(frozen=True)
class K1TVSpec(FamilySpec):
    """K_1 + (tK_k ∪ K_1)"""

    kind: ClassVar[str] = "K1TV"
    t: int
    k: int

    @property
    def order(self) -> int:
        return 2 + self.t * self.k

    def validate(self) -> None:
        self._require(self.t >= 2, "t >= 2")
        self._require(self.k >= 1, "k >= 1")


@dataclass(frozen=True)
class JCSpec(FamilySpec):
    """Adjacent centers of K_1 + sK_k and K_1 + (tK_k ∪ K_1)"""

    kind: ClassVar[str] = "JC"
    s: int
    t: int
    k: int

    @property
    def order(self) -> int:
        return 3 + (self.s + self.t) * self.k

    def validate(self) -> None:
        self._require(self.s >= 1, "s >= 1")
        self._require(self.t >= 1, "t >= 1")
        self._require(self.k >= 1, "k >= 1")


@dataclass(frozen=True)
class K1MSpec(FamilySpec):
    kind: ClassVar[str] = "K1M"
    t: int

    @property
    def order(self) -> int:
        return 1 + self.t

    def validate(self) -> None:
        self._require(self.t >= 6, "t >= 6")


@dataclass(frozen=True)
class K1SMSpec(FamilySpec):
    kind: ClassVar[str] = "K1SM"
    s: int
    t: int

    @property
    def order(self) -> int:
        return 1 + self.s + self.t

    def validate(self) -> None:
        self._require(self.s >= 1, "s >= 1")
        self._require(self.t >= 0, "t >= 0")
        self._require(self.s + self.t >= 6, "s + t >= 6")


FAMILY_KINDS = {
    cls.kind: cls
    for cls in (HSpec, FSpec, F1Spec, FVSpec, K2MSpec, K2SMSpec, K3MSpec, K1TKSpec, K1TVSpec, JCSpec, K1MSpec, K1SMSpec)
}
PATH_ONLY_KINDS = frozenset({"K1TK", "K1TV", "JC", "K1M", "K1SM"})
_APEX_COUNT = {"K1M": 1, "K1SM": 1, "K2M": 2, "K2SM": 2, "K3M": 3}


def spec_from_json(data: Dict[str, Any]) -> FamilySpec:
    if not isinstance(data, dict) or data.get("kind") not in FAMILY_KINDS:
        raise FamilySpecError(f"unknown family kind: {data.get('kind') if isinstance(data, dict) else data!r}")
    cls = FAMILY_KINDS[data["kind"]]
    names = [f.name for f in fields(cls)]
    if set(data) != set(names) | {"kind"}:
        raise FamilySpecError(f"{cls.kind} expects parameters {names}")
    values = {name: data[name] for name in names}
    if not all(type(v) is int for v in values.values()):
        raise FamilySpecError(f"{cls.kind} parameters must be integers")
    spec = cls(**values)
    spec.validate()
    return spec


# Construction


class _HostBuilder:
    def __init__(self):
        self.roles: List[str] = []
        self.blocks: List[np.ndarray] = []

    def add(self, labels: Iterable[str]) -> np.ndarray:
        start = len(self.roles)
        self.roles.extend(labels)
        return np.arange(start, len(self.roles), dtype=np.int64)

    def clique(self, ids: np.ndarray) -> None:
        iu, ju = np.triu_indices(len(ids), k=1)
        self.blocks.append(np.column_stack([ids[iu], ids[ju]]))

    def connect(self, xs: np.ndarray, ys: np.ndarray) -> None:
        self.blocks.append(np.column_stack([np.repeat(xs, len(ys)), np.tile(ys, len(xs))]))

    def matching(self, ids: np.ndarray) -> None:
        pairs = len(ids) // 2
        self.blocks.append(np.column_stack([ids[0 : 2 * pairs : 2], ids[1 : 2 * pairs : 2]]))

    def graph(self) -> Tuple[Graph, Tuple[str, ...]]:
        edges = np.concatenate(self.blocks) if self.blocks else np.empty((0, 2), dtype=np.int64)
        return Graph.from_edges(len(self.roles), edges), tuple(self.roles)


def _clique_group(builder: _HostBuilder, prefix: str, count: int, size: int) -> List[np.ndarray]:
    groups = []
    for j in range(count):
        ids = builder.add(f"{prefix}/{j}/{i}" for i in range(size))
        builder.clique(ids)
        groups.append(ids)
    return groups


def build_family(spec: FamilySpec) -> Tuple[Graph, Tuple[str, ...]]:
    """Build the host graph of `spec` and the role label of every vertex.

    Vertex numbering follows the role order:
      H:    A/*, B/*, C/*
      F:    apex/x, apex/y, apex/z, s/<j>/*, s/single, t/<j>/*
      F1:   apex/u, apex/v, cl/<j>/*, big/*, single      (FV: no single)
      K2M, K3M, K1M:   apex/*, m/*
      K2SM, K1SM:      apex/*, star/center, star/leaf/*, m/*
      K1TK: apex/0, cl/<j>/*, big/*, single         (K1TV: no big)
      JC:   apex/0, apex/1, s/<j>/*, t/<j>/*, single
    """
    spec.validate()
    b = _HostBuilder()
    kind = spec.kind

    if kind == "H":
        a, nb, nc = spec.sizes
        A = b.add(f"A/{i}" for i in range(a))
        B = b.add(f"B/{i}" for i in range(nb))
        C = b.add(f"C/{i}" for i in range(nc))
        b.clique(np.concatenate([A, C]))
        b.connect(A, B)
    elif kind == "F":
        apexes = b.add(["apex/x", "apex/y", "apex/z"])
        b.clique(apexes)
        x, y, z = apexes[0:1], apexes[1:2], apexes[2:3]
        for ids in _clique_group(b, "s", spec.s, spec.k - 1):
            b.connect(ids, np.concatenate([x, z]))
        b.connect(b.add(["s/single"]), np.concatenate([x, z]))
        for ids in _clique_group(b, "t", spec.t, spec.k - 1):
            b.connect(ids, np.concatenate([y, z]))
    elif kind in ("F1", "FV"):
        apexes = b.add(["apex/u", "apex/v"])
        b.clique(apexes)
        for ids in _clique_group(b, "cl", spec.t, spec.k - 1):
            b.connect(ids, apexes)
        big = b.add(f"big/{i}" for i in range(spec.k))
        b.clique(big)
        b.connect(big, apexes)
        if kind == "F1":
            b.connect(b.add(["single"]), apexes)
    elif kind in _APEX_COUNT:
        apexes = b.add(f"apex/{i}" for i in range(_APEX_COUNT[kind]))
        b.clique(apexes)
        if kind in ("K2SM", "K1SM"):
            center = b.add(["star/center"])
            leaves = b.add(f"star/leaf/{i}" for i in range(spec.s - 1))
            b.connect(center, leaves)
            b.connect(np.concatenate([center, leaves]), apexes)
        m = b.add(f"m/{i}" for i in range(spec.t))
        b.matching(m)
        b.connect(m, apexes)
    elif kind in ("K1TK", "K1TV"):
        apex = b.add(["apex/0"])
        for ids in _clique_group(b, "cl", spec.t, spec.k):
            b.connect(ids, apex)
        if kind == "K1TK":
            big = b.add(f"big/{i}" for i in range(spec.k + 1))
            b.clique(big)
            b.connect(big, apex)
        b.connect(b.add(["single"]), apex)
    elif kind == "JC":
        centers = b.add(["apex/0", "apex/1"])
        b.clique(centers)
        for ids in _clique_group(b, "s", spec.s, spec.k):
            b.connect(ids, centers[0:1])
        for ids in _clique_group(b, "t", spec.t, spec.k):
            b.connect(ids, centers[1:2])
        b.connect(b.add(["single"]), centers[1:2])
    else:
        raise FamilySpecError(f"unsupported family kind {kind}")
    return b.graph()


def family_edge_count(spec: FamilySpec) -> int:
    """Edge count of H(n, ell, a): C(ell - a, 2) + a(n - ell + a)"""
    if not isinstance(spec, HSpec):
        raise FamilySpecError(f"edge-count formula is defined for H only, got {spec.kind}")
    spec.validate()
    clique = spec.ell - spec.a
    return clique * (clique - 1) // 2 + spec.a * (spec.n - spec.ell + spec.a)


def _segment_orders(spec: FamilySpec) -> List[int]:
    """Longest-path orders of the pieces hanging off the apexes of a joined family"""
    kind = spec.kind
    if kind in ("F1", "FV"):
        pieces = [spec.k - 1] * spec.t + [spec.k] + ([1] if kind == "F1" else [])
    elif kind == "K1TK":
        pieces = [spec.k] * spec.t + [spec.k + 1, 1]
    elif kind == "K1TV":
        pieces = [spec.k] * spec.t + [1]
    else:
        pieces = [2] * (spec.t // 2) + [1] * (spec.t % 2)
        if kind in ("K2SM", "K1SM"):
            pieces.append(min(spec.s, 3))
    return sorted(pieces, reverse=True)


def max_cycle_bound(spec: FamilySpec, k: Optional[int] = None, setting: Optional[str] = None) -> int:
    """Exact circumference (cycle setting) or longest-path order (path setting) of the host.

    The setting defaults to "path" for the path-only families and "cycle" otherwise.
    """
    spec.validate()
    if setting is None:
        setting = "path" if spec.kind in PATH_ONLY_KINDS else "cycle"
    if setting not in ("cycle", "path"):
        raise FamilySpecError(f"unknown setting {setting!r}")
    if k is not None and hasattr(spec, "k") and spec.k != k:
        raise FamilySpecError(f"{spec.kind} built for k={spec.k}, asked for k={k}")

    kind = spec.kind
    if kind == "H":
        a, nb, nc = spec.sizes
        if setting == "cycle":
            value = a + nc + min(nb, a - 1) if nc > 0 else a + min(nb, a)
            return value if value >= 3 else 0
        with_c = a + nc + min(nb, a) if nc > 0 else 0
        return max(a + min(nb, a + 1), with_c)
    if setting == "cycle":
        if kind in PATH_ONLY_KINDS:
            raise FamilySpecError(f"{kind} is a path-setting family")
        if kind == "F":
            return 2 * spec.k + 1
        apexes = 2 if kind in ("F1", "FV") else _APEX_COUNT[kind]
        return apexes + sum(_segment_orders(spec)[:apexes])
    if kind in ("F", "F1", "FV"):
        raise FamilySpecError(f"{kind} is a cycle-setting family")
    if kind == "JC":
        return 2 * spec.k + 2
    apexes = 1 if kind in ("K1TK", "K1TV") else _APEX_COUNT[kind]
    return apexes + sum(_segment_orders(spec)[: apexes + 1])


def high_degree_vertices(G: Graph, k: int) -> List[int]:
    """Vertices of degree at least k + 2"""
    return np.flatnonzero(G.degrees >= k + 2).tolist()


# Embeddings and the independent validator


@dataclass(frozen=True)
class Embedding:
    """Role of every vertex (index = vertex id) inside the host built from `spec`"""

    spec: FamilySpec
    roles: Tuple[str, ...]

    def role_of(self, v: int) -> str:
        return self.roles[v]

    def to_json(self) -> Dict[str, Any]:
        return {
            "kind": "embedding",
            "family": self.spec.to_json(),
            "roles": {str(v): role for v, role in enumerate(self.roles)},
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any], n: int) -> "Embedding":
        spec = spec_from_json(data.get("family"))
        raw = data.get("roles")
        if not isinstance(raw, dict):
            raise FamilySpecError("embedding roles must be an object")
        roles = [""] * n
        for key, role in raw.items():
            if not (isinstance(key, str) and key.isascii() and key.isdigit()) or int(key) >= n:
                raise FamilySpecError(f"role assigned to unknown vertex {key!r}")
            roles[int(key)] = str(role)
        return cls(spec=spec, roles=tuple(roles))


def make_embedding(spec: FamilySpec, n: int, assignment: Dict[int, str]) -> Embedding:
    return Embedding(spec=spec, roles=tuple(assignment[v] for v in range(n)))


@dataclass(frozen=True)
class _HostModel:
    """Host adjacency as a quotient: role groups plus the rules joining them"""

    patterns: Tuple[Tuple[Tuple[str, ...], str, Tuple[int, ...]], ...]
    universal: FrozenSet[str] = frozenset()
    pairs: FrozenSet[FrozenSet[str]] = frozenset()
    cliques: FrozenSet[str] = frozenset()
    matchings: FrozenSet[str] = frozenset()


def _pairs(*items: Tuple[str, str]) -> FrozenSet[FrozenSet[str]]:
    return frozenset(frozenset(item) for item in items)


def _host_model(spec: FamilySpec) -> _HostModel:
    kind = spec.kind
    if kind == "H":
        a, nb, nc = spec.sizes
        return _HostModel(
            patterns=((("A", "#"), "A", (a,)), (("B", "#"), "B", (nb,)), (("C", "#"), "C", (nc,))),
            pairs=_pairs(("A", "B"), ("A", "C")),
            cliques=frozenset({"A", "C"}),
        )
    if kind == "F":
        return _HostModel(
            patterns=(
                (("apex", "x"), "x", ()),
                (("apex", "y"), "y", ()),
                (("apex", "z"), "z", ()),
                (("s", "#", "#"), "s", (spec.s, spec.k - 1)),
                (("s", "single"), "s1", ()),
                (("t", "#", "#"), "t", (spec.t, spec.k - 1)),
            ),
            universal=frozenset({"z"}),
            pairs=_pairs(("x", "y"), ("x", "s"), ("x", "s1"), ("y", "t")),
            cliques=frozenset({"s", "t"}),
        )
    if kind in ("F1", "FV"):
        patterns = [
            (("apex", "u"), "u", ()),
            (("apex", "v"), "v", ()),
            (("cl", "#", "#"), "cl", (spec.t, spec.k - 1)),
            (("big", "#"), "big", (spec.k,)),
        ]
        if kind == "F1":
            patterns.append((("single",), "single", ()))
        return _HostModel(patterns=tuple(patterns), universal=frozenset({"u", "v"}), cliques=frozenset({"cl", "big"}))
    if kind in _APEX_COUNT:
        patterns = [(("apex", "#"), "apex", (_APEX_COUNT[kind],)), (("m", "#"), "m", (spec.t,))]
        pairs = frozenset()
        if kind in ("K2SM", "K1SM"):
            patterns += [(("star", "center"), "center", ()), (("star", "leaf", "#"), "leaf", (spec.s - 1,))]
            pairs = _pairs(("center", "leaf"))
        return _HostModel(
            patterns=tuple(patterns), universal=frozenset({"apex"}), pairs=pairs, matchings=frozenset({"m"})
        )
    if kind in ("K1TK", "K1TV"):
        patterns = [(("apex", "0"), "apex", ()), (("cl", "#", "#"), "cl", (spec.t, spec.k)), (("single",), "single", ())]
        if kind == "K1TK":
            patterns.append((("big", "#"), "big", (spec.k + 1,)))
        return _HostModel(patterns=tuple(patterns), universal=frozenset({"apex"}), cliques=frozenset({"cl", "big"}))
    if kind == "JC":
        return _HostModel(
            patterns=(
                (("apex", "0"), "c0", ()),
                (("apex", "1"), "c1", ()),
                (("s", "#", "#"), "s", (spec.s, spec.k)),
                (("t", "#", "#"), "t", (spec.t, spec.k)),
                (("single",), "single", ()),
            ),
            pairs=_pairs(("c0", "c1"), ("c0", "s"), ("c1", "t"), ("c1", "single")),
            cliques=frozenset({"s", "t"}),
        )
    raise FamilySpecError(f"unsupported family kind {kind}")


def _parse_role(model: _HostModel, label: str) -> Optional[Tuple[str, int, int]]:
    tokens = label.split("/")
    for pattern, group, bounds in model.patterns:
        if len(pattern) != len(tokens):
            continue
        numbers = []
        for expected, token in zip(pattern, tokens):
            if expected == "#":
                if not (token.isascii() and token.isdigit()) or (len(token) > 1 and token[0] == "0"):
                    break
                numbers.append(int(token))
            elif expected != token:
                break
        else:
            if any(value >= bound for value, bound in zip(numbers, bounds)):
                return None
            if len(numbers) == 2:
                return group, numbers[0], numbers[1]
            return group, 0, numbers[0] if numbers else 0
    return None


def check_embedding(G: Graph, emb: Embedding) -> CheckResult:
    """Validate an embedding against the host's adjacency rules (never raises)"""
    try:
        emb.spec.validate()
        model = _host_model(emb.spec)
    except FamilySpecError as e:
        return CheckResult(False, str(e))
    if len(emb.roles) != G.order:
        return CheckResult(False, f"embedding covers {len(emb.roles)} vertices, graph has {G.order}")

    groups = sorted({group for _, group, _ in model.patterns})
    code = {group: idx for idx, group in enumerate(groups)}
    gc = np.empty(G.order, dtype=np.int64)
    jj = np.empty(G.order, dtype=np.int64)
    ii = np.empty(G.order, dtype=np.int64)
    for v, label in enumerate(emb.roles):
        parsed = _parse_role(model, label)
        if parsed is None:
            return CheckResult(False, f"vertex {v} has role {label!r}, not well-formed for {emb.spec.to_json()}")
        gc[v], jj[v], ii[v] = code[parsed[0]], parsed[1], parsed[2]
    if len(set(emb.roles)) != len(emb.roles):
        seen: Dict[str, int] = {}
        for v, label in enumerate(emb.roles):
            if label in seen:
                return CheckResult(False, f"vertices {seen[label]} and {v} share role {label!r}")
            seen[label] = v

    universal = np.array([g in model.universal for g in groups])
    clique = np.array([g in model.cliques for g in groups])
    matching = np.array([g in model.matchings for g in groups])
    pair = np.zeros((len(groups), len(groups)), dtype=bool)
    for item in model.pairs:
        p, q = tuple(item)
        pair[code[p], code[q]] = pair[code[q], code[p]] = True

    u, v = G.edges[:, 0], G.edges[:, 1]
    gu, gv = gc[u], gc[v]
    same = gu == gv
    ok = (
        universal[gu]
        | universal[gv]
        | pair[gu, gv]
        | (same & clique[gu] & (jj[u] == jj[v]))
        | (same & matching[gu] & (ii[u] // 2 == ii[v] // 2))
    )
    bad = np.flatnonzero(~ok)
    if bad.size:
        x, y = int(u[bad[0]]), int(v[bad[0]])
        return CheckResult(False, f"edge {x}-{y} maps to {emb.roles[x]!r} and {emb.roles[y]!r}, not adjacent in host")
    return CheckResult(True)


# Component scans shared by the recognizers


def split_components(
    G: Graph, removed: Iterable[int], cap: int, max_over: int, meter: Optional[WorkMeter] = None
) -> Optional[Tuple[List[List[int]], List[List[int]]]]:
    """Components of G - removed split into orders <= cap and larger ones.

    Returns None as soon as more than `max_over` components exceed `cap`.
    """
    seen = bytearray(G.order)
    for v in removed:
        seen[v] = 1
    small: List[List[int]] = []
    over: List[List[int]] = []
    start = seen.find(0)
    while start != -1:
        abort = len(over) == max_over
        seen[start] = 1
        comp = [start]
        head = 0
        while head < len(comp):
            nbrs = G.neighbor_list(comp[head])
            head += 1
            if meter is not None:
                meter.add(len(nbrs))
            for w in nbrs:
                if not seen[w]:
                    seen[w] = 1
                    comp.append(w)
            if abort and len(comp) > cap:
                return None
        comp.sort()
        (over if len(comp) > cap else small).append(comp)
        start = seen.find(0, start + 1)
    return small, over


def _exceeds(G: Graph, start: int, removed: Set[int], cap: int) -> bool:
    """Whether the component of `start` in G - removed has more than `cap` vertices"""
    seen = {start}
    frontier = [start]
    while frontier:
        for w in G.neighbor_list(frontier.pop()):
            if w not in seen and w not in removed:
                seen.add(w)
                if len(seen) > cap:
                    return True
                frontier.append(w)
    return False


def components_within(G: Graph, vertices: Sequence[int], removed: int) -> List[List[int]]:
    inside = set(vertices)
    inside.discard(removed)
    parts = []
    while inside:
        start = min(inside)
        inside.discard(start)
        comp = [start]
        head = 0
        while head < len(comp):
            for w in G.neighbor_list(comp[head]):
                if w in inside:
                    inside.discard(w)
                    comp.append(w)
            head += 1
        parts.append(sorted(comp))
    parts.sort()
    return parts


def _find_shattering_vertex(G: Graph, vertices: Sequence[int], cap: int) -> Optional[int]:
    """Lowest-id b such that every component of G[vertices] - b has at most `cap` vertices.

    Uses one lowpoint DFS over the (connected) induced subgraph.
    """
    inside = set(vertices)
    root = min(inside)
    disc = {root: 0}
    low = {root: 0}
    size = {}
    parent = {root: None}
    children: Dict[int, List[int]] = {v: [] for v in inside}
    stack = [(root, iter(G.neighbor_list(root)))]
    timer = 1
    while stack:
        v, it = stack[-1]
        for w in it:
            if w not in inside:
                continue
            if w not in disc:
                disc[w] = low[w] = timer
                timer += 1
                parent[w] = v
                children[v].append(w)
                stack.append((w, iter(G.neighbor_list(w))))
                break
            if w != parent[v]:
                low[v] = min(low[v], disc[w])
        else:
            stack.pop()
            size[v] = 1 + sum(size[c] for c in children[v])
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])

    total = len(inside)
    for b in sorted(inside):
        rest = total - 1
        largest = 0
        for c in children[b]:
            if b == root or low[c] >= disc[b]:
                largest = max(largest, size[c])
                rest -= size[c]
        if max(largest, rest) <= cap:
            return b
    return None


# Single-candidate tests


def try_h(G: Graph, k: int, A: Sequence[int], meter: Optional[WorkMeter] = None) -> Optional[Embedding]:
    """G ⊆ H(n, 2k+2, k) with A as the A-part: at most one edge avoids A"""
    n = G.order
    inside = np.zeros(n, dtype=bool)
    inside[list(A)] = True
    src, dst = G.sources, G.indices
    if meter is not None:
        meter.add(len(dst))
    outside = np.flatnonzero(~inside[src] & ~inside[dst] & (src < dst))
    if outside.size > 1:
        return None
    rest = np.flatnonzero(~inside)
    if outside.size:
        c_part = np.array([src[outside[0]], dst[outside[0]]])
    else:
        c_part = rest[:2]
    b_part = rest[~np.isin(rest, c_part)]
    roles = np.empty(n, dtype=object)
    for prefix, part in (("A", np.flatnonzero(inside)), ("B", b_part), ("C", c_part)):
        roles[part] = [f"{prefix}/{i}" for i in range(part.size)]
    return Embedding(spec=HSpec(n, 2 * k + 2, k), roles=tuple(roles.tolist()))


def try_h_independent(G: Graph, k: int) -> Optional[Embedding]:
    """G ⊆ H(n, 2k+1, k) for n in {2k+1, 2k+2}: an independent set of n - k vertices.

    Any such set through a vertex v of degree >= k is exactly {v} ∪ non-neighbors(v).
    """
    n = G.order
    size = n - k
    src, dst = G.sources, G.indices
    for v in range(n):
        member = np.ones(n, dtype=bool)
        member[G.neighbors(v)] = False
        if int(member.sum()) < size:
            continue
        if np.any(member[src] & member[dst]):
            continue
        chosen = np.flatnonzero(member).tolist()
        extra = len(chosen) - size
        if extra:
            chosen = [w for w in chosen if w == v] + [w for w in chosen if w != v][: size - 1]
            chosen.sort()
        taken = set(chosen)
        assignment = {w: f"A/{i}" for i, w in enumerate(w for w in range(n) if w not in taken)}
        assignment.update({w: f"B/{i}" for i, w in enumerate(chosen[:-1])})
        assignment[chosen[-1]] = "C/0"
        return make_embedding(HSpec(n, 2 * k + 1, k), n, assignment)
    return None


def clique_roles(assignment: Dict[int, str], prefix: str, components: Sequence[Sequence[int]]) -> None:
    for j, comp in enumerate(components):
        for i, v in enumerate(comp):
            assignment[v] = f"{prefix}/{j}/{i}"


def try_f1(G: Graph, k: int, u: int, v: int, meter: Optional[WorkMeter] = None) -> Optional[Embedding]:
    """G ⊆ K_2 + (tK_{k-1} ∪ K_k ∪ K_1) with apexes u, v"""
    split = split_components(G, (u, v), cap=k, max_over=0, meter=meter)
    if split is None:
        return None
    small, _ = split
    bigs = [comp for comp in small if len(comp) == k]
    if len(bigs) > 1:
        return None
    rest = [comp for comp in small if len(comp) < k]
    assignment = {u: "apex/u", v: "apex/v"}
    clique_roles(assignment, "cl", rest)
    for comp in bigs:
        assignment.update({w: f"big/{i}" for i, w in enumerate(comp)})
    return make_embedding(F1Spec(max(1, len(rest)), k), G.order, assignment)


def try_f(G: Graph, k: int, a: int, c: int, meter: Optional[WorkMeter] = None) -> Optional[Embedding]:
    """G ⊆ F(s, t, k) with a -> apex/x and c -> apex/z; apex/y is forced or searched"""
    cap = k - 1
    removed = {a, c}
    heavy = [w for w in G.neighbor_list(a) if w not in removed and _exceeds(G, w, removed, cap)]
    if len(heavy) > 1:
        return None
    split = split_components(G, removed, cap=cap, max_over=1, meter=meter)
    if split is None:
        return None
    small, over = split
    if not over:
        return None
    Y = over[0]
    inside = set(Y)
    touching = [w for w in G.neighbor_list(a) if w in inside]
    if len(touching) > 1:
        return None
    if touching:
        b = touching[0]
    else:
        b = _find_shattering_vertex(G, Y, cap)
        if b is None:
            return None
    parts = components_within(G, Y, b)
    if any(len(part) > cap for part in parts):
        return None
    assignment = {a: "apex/x", b: "apex/y", c: "apex/z"}
    clique_roles(assignment, "s", small)
    clique_roles(assignment, "t", parts)
    return make_embedding(FSpec(max(1, len(small)), max(1, len(parts)), k), G.order, assignment)


def try_matching_host(G: Graph, apexes: Sequence[int], kind: str, min_t: int) -> Optional[Embedding]:
    """G ⊆ K_r + M_t, or K_r + (S_s ∪ M_t) for the star kinds, with the given apexes"""
    star = kind in ("K2SM", "K1SM")
    blocked = set(apexes)
    rest_nbrs = {v: [w for w in G.neighbor_list(v) if w not in blocked] for v in range(G.order) if v not in blocked}
    high = [v for v, nbrs in rest_nbrs.items() if len(nbrs) >= 2]
    if len(high) > (1 if star else 0) or (star and not high):
        return None

    assignment = {v: f"apex/{i}" for i, v in enumerate(sorted(apexes))}
    leaves: List[int] = []
    if star:
        center = high[0]
        leaves = sorted(rest_nbrs[center])
        assignment[center] = "star/center"
        assignment.update({w: f"star/leaf/{i}" for i, w in enumerate(leaves)})
    slot = 0
    for v in sorted(rest_nbrs):
        if v in assignment:
            continue
        assignment[v] = f"m/{2 * slot}"
        for w in rest_nbrs[v]:
            assignment[w] = f"m/{2 * slot + 1}"
        slot += 1

    if star:
        s = 1 + len(leaves)
        spec = FAMILY_KINDS[kind](s, max(2 * slot, min_t - s, 0))
    else:
        spec = FAMILY_KINDS[kind](max(2 * slot, min_t))
    return make_embedding(spec, G.order, assignment)


# Seeded sweeps


def _seeded_h(G, k, seed, tried, meter):
    A = tuple(G.neighbor_list(seed))
    if A in tried:
        return None
    tried.add(A)
    return try_h(G, k, A, meter)


def _seeded_f1(G, k, seed, tried, meter):
    for u, v in combinations(G.neighbor_list(seed), 2):
        if (u, v) not in tried:
            tried.add((u, v))
            found = try_f1(G, k, u, v, meter)
            if found is not None:
                return found
    return None


def _seeded_f(G, k, seed, tried, meter):
    for a, c in permutations(G.neighbor_list(seed), 2):
        if (a, c) not in tried:
            tried.add((a, c))
            found = try_f(G, k, a, c, meter)
            if found is not None:
                return found
    return None


def _seeded_matching(kind: str, apex_count: int, min_t: int):
    def attempt(G, k, seed, tried, meter):
        for apexes in combinations(G.neighbor_list(seed), apex_count):
            if apexes not in tried:
                tried.add(apexes)
                found = try_matching_host(G, apexes, kind, min_t)
                if found is not None:
                    return found
        return None

    return attempt


def cycle_catalog(k: int) -> List[Tuple[str, Any]]:
    catalog = [("H", _seeded_h), ("F1", _seeded_f1), ("F", _seeded_f)]
    if k == 3:
        catalog += [("K2M", _seeded_matching("K2M", 2, 6)), ("K2SM", _seeded_matching("K2SM", 2, 6))]
    if k == 4:
        catalog.append(("K3M", _seeded_matching("K3M", 3, 7)))
    return catalog


def sweep_catalog(
    G: Graph, k: int, catalog: List[Tuple[str, Any]], seeds: Sequence[int], meter: Optional[WorkMeter] = None
) -> Optional[Embedding]:
    """First embedding found in catalog order, trying seeds in the given order per family"""
    for _, attempt in catalog:
        tried: Set[Any] = set()
        for seed in seeds:
            found = attempt(G, k, seed, tried, meter)
            if found is not None:
                return found
    return None


def degree_k_vertices(G: Graph, k: int, limit: Optional[int] = None) -> List[int]:
    found = np.flatnonzero(G.degrees == k)
    return (found[:limit] if limit is not None else found).tolist()


def require_cycle_domain(G: Graph, k: int, min_order: int) -> None:
    """Raise PreconditionError unless G is 2-connected with all-but-one degrees >= k >= 2"""
    if k < 2:
        raise PreconditionError("k", f"k = {k} must be at least 2")
    if G.order < min_order:
        raise PreconditionError("order", f"n = {G.order} must be at least {min_order}")
    report = is_biconnected(G)
    if not report.biconnected:
        raise PreconditionError("biconnected", f"graph is not 2-connected (articulation points {list(report.articulation_points)})")
    second = degree_profile(G).second_min_degree
    if second is None or second < k:
        raise PreconditionError("degree", f"more than one vertex has degree below k = {k}")


def recognize(G: Graph, k: int) -> Optional[Embedding]:
    """Embedding of G into a long-cycle extremal host for (n, k), or None.

    n = 2k+1: H{2k+1,2k+1,k}. n >= 2k+2: H{n,2k+2,k}, F1{t,k}, F{s,t,k}, plus
    K2M/K2SM when k = 3 and K3M when k = 4, in that order.
    """
    require_cycle_domain(G, k, 2 * k + 1)
    return recognize_unchecked(G, k)


def recognize_unchecked(G: Graph, k: int, meter: Optional[WorkMeter] = None) -> Optional[Embedding]:
    if G.order == 2 * k + 1:
        return try_h_independent(G, k)
    return sweep_catalog(G, k, cycle_catalog(k), degree_k_vertices(G, k), meter)


@dataclass(frozen=True)
class OreWitness:
    """D (|D| = k) completely joined to the independent set I (|I| >= k + 1)"""

    dominating: Tuple[int, ...]
    independent: Tuple[int, ...]


def recognize_ore(G: Graph, k: int) -> Optional[OreWitness]:
    """Sandwich K̄_k + K̄_s ⊆ G ⊆ K_k + K̄_s with s >= k + 1, i.e. circumference exactly 2k"""
    if k < 1:
        raise PreconditionError("k", f"k = {k} must be positive")
    if not is_biconnected(G).biconnected:
        raise PreconditionError("biconnected", "graph is not 2-connected")
    if G.order and int(G.degrees.min()) < k:
        raise PreconditionError("degree", f"minimum degree is below k = {k}")
    seeds = degree_k_vertices(G, k, limit=1)
    if not seeds:
        return None
    D = G.neighbor_list(seeds[0])
    dominating = set(D)
    independent = [v for v in range(G.order) if v not in dominating]
    if len(independent) < k + 1:
        return None
    member = np.zeros(G.order, dtype=bool)
    member[independent] = True
    if np.any(member[G.sources] & member[G.indices]):
        return None
    if any(int(member[G.neighbors(d)].sum()) != len(independent) for d in D):
        return None
    return OreWitness(dominating=tuple(D), independent=tuple(independent))
