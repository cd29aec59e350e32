"""Certificate JSON schema and its independent validator"""
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Union

sys.path.append(str(Path(__file__).parent.parent))

from config.settings import CERTIFICATE_VERSION
from src.families import Embedding, check_embedding, max_cycle_bound
from src.graph_core import CheckResult, Graph, GraphError
from src.longcycle import validate_cycle, validate_path

PROBLEMS = ("cycle", "min-cycle", "path")
MODES = ("fast", "exact")
VERDICTS = ("T1", "T0")
WITNESS_SOURCES = ("recognizer", "search", "oracle", "none")
NO_EVIDENCE = {"kind": "none"}


@dataclass(frozen=True)
class Certificate:
    k: int
    n: int
    threshold: int
    verdict: str
    mode: str
    problem: str
    witness_source: str
    evidence: Dict[str, Any] = field(default_factory=lambda: dict(NO_EVIDENCE))
    work: int = 0
    version: int = CERTIFICATE_VERSION

    @property
    def verdict_only(self) -> bool:
        return self.evidence.get("kind") == "none"

    def to_json(self) -> Dict[str, Any]:
        return asdict(self)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Certificate":
        try:
            return cls(**data)
        except TypeError as e:
            raise GraphError(f"malformed certificate: {e}")


def expected_threshold(G: Graph, problem: str, k: int) -> int:
    """Threshold each problem tests: cycle 2k+2, min-cycle min{2δ+2, n}, path min{n, 2k+3} vertices"""
    n = G.order
    if problem == "cycle":
        return 2 * k + 2
    if problem == "min-cycle":
        return min(2 * k + 2, n)
    if problem == "path":
        return min(n, 2 * k + 3)
    raise GraphError(f"unknown problem {problem!r}")


def _check_evidence(G: Graph, data: Dict[str, Any]) -> CheckResult:
    evidence = data["evidence"]
    if not isinstance(evidence, dict):
        return CheckResult(False, "evidence must be an object")
    kind = evidence.get("kind")
    verdict, threshold, problem = data["verdict"], data["threshold"], data["problem"]
    source = data["witness_source"]

    if kind == "none":
        if verdict != "T1" or source != "none":
            return CheckResult(False, "verdict-only certificates must be T1 with witness_source none")
        return CheckResult(True)
    if kind in ("cycle", "path"):
        if verdict != "T1":
            return CheckResult(False, f"{kind} evidence supports T1 only")
        if source not in ("search", "oracle"):
            return CheckResult(False, f"{kind} evidence must come from search or oracle, not {source}")
        vertices = evidence.get("vertices")
        if not isinstance(vertices, list):
            return CheckResult(False, f"{kind} evidence needs a vertex list")
        if kind == "cycle":
            if problem == "path":
                return CheckResult(False, "path certificates carry path evidence")
            return validate_cycle(G, vertices, min_length=threshold)
        if problem != "path":
            return CheckResult(False, "path evidence only certifies the path problem")
        return validate_path(G, vertices, min_order=threshold)
    if kind == "embedding":
        if verdict != "T0" or source != "recognizer":
            return CheckResult(False, "embedding evidence supports T0 from the recognizer only")
        emb = Embedding.from_json(evidence, G.order)
        setting = "path" if problem == "path" else "cycle"
        bound = max_cycle_bound(emb.spec, setting=setting)
        if bound >= threshold:
            return CheckResult(False, f"host {emb.spec.to_json()} allows {bound} >= threshold {threshold}")
        return check_embedding(G, emb)
    return CheckResult(False, f"unknown evidence kind {kind!r}")


def validate_certificate(G: Graph, cert: Union[Certificate, Dict[str, Any]]) -> CheckResult:
    """Re-check a certificate against G without trusting any producer code path"""
    data = cert.to_json() if isinstance(cert, Certificate) else cert
    try:
        if not isinstance(data, dict):
            return CheckResult(False, "certificate must be an object")
        if data.get("version") != CERTIFICATE_VERSION:
            return CheckResult(False, f"unsupported certificate version {data.get('version')!r}")
        if data.get("n") != G.order:
            return CheckResult(False, f"certificate is for n = {data.get('n')}, graph has {G.order}")
        k = data.get("k")
        if type(k) is not int or k < 1:
            return CheckResult(False, f"invalid k {k!r}")
        if data.get("problem") not in PROBLEMS:
            return CheckResult(False, f"unknown problem {data.get('problem')!r}")
        if data.get("mode") not in MODES:
            return CheckResult(False, f"unknown mode {data.get('mode')!r}")
        if data.get("verdict") not in VERDICTS:
            return CheckResult(False, f"unknown verdict {data.get('verdict')!r}")
        if data.get("witness_source") not in WITNESS_SOURCES:
            return CheckResult(False, f"unknown witness source {data.get('witness_source')!r}")
        if data["problem"] == "min-cycle" and G.order and int(G.degrees.min()) != k:
            return CheckResult(False, f"min-cycle certificate uses k = {k}, minimum degree is {int(G.degrees.min())}")
        expected = expected_threshold(G, data["problem"], k)
        if data.get("threshold") != expected:
            return CheckResult(False, f"threshold {data.get('threshold')!r} != {expected} for {data['problem']}")
        return _check_evidence(G, data)
    except (GraphError, KeyError, TypeError, ValueError, AttributeError) as e:
        return CheckResult(False, f"malformed certificate: {e}")


def load_certificate(path: Union[str, Path]) -> Dict[str, Any]:
    return json.loads(Path(path).read_text())


def save_certificate(path: Union[str, Path], cert: Certificate) -> None:
    Path(path).write_text(json.dumps(cert.to_json(), indent=2, sort_keys=True) + "\n")
