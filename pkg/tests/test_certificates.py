import copy

import pytest

from config.settings import CERTIFICATE_VERSION
from src.certificates import (
    Certificate,
    expected_threshold,
    load_certificate,
    save_certificate,
    validate_certificate,
)
from src.decide import certify
from src.families import HSpec, build_family
from src.graph_core import GraphError, complete_bipartite_graph, cycle_graph, petersen_graph
from src.pathver import certify_path


@pytest.fixture(scope="module")
def petersen_cert():
    return certify(petersen_graph(), 3, mode="exact").to_json()


@pytest.fixture(scope="module")
def h_member():
    G, _ = build_family(HSpec(12, 8, 3))
    return G, certify(G, 3, mode="exact").to_json()


class TestThresholds:
    def test_per_problem(self):
        G = cycle_graph(7)
        assert expected_threshold(G, "cycle", 3) == 8
        assert expected_threshold(G, "min-cycle", 3) == 7
        assert expected_threshold(G, "path", 2) == 7
        assert expected_threshold(G, "path", 1) == 5

    def test_unknown_problem(self):
        with pytest.raises(GraphError):
            expected_threshold(cycle_graph(7), "walk", 2)


class TestValidCertificates:
    def test_cycle_evidence(self, petersen_cert):
        assert petersen_cert["verdict"] == "T1"
        assert petersen_cert["evidence"]["kind"] == "cycle"
        assert petersen_cert["version"] == CERTIFICATE_VERSION
        assert validate_certificate(petersen_graph(), petersen_cert)

    def test_embedding_evidence(self, h_member):
        G, cert = h_member
        assert cert["evidence"]["kind"] == "embedding"
        assert validate_certificate(G, cert)

    def test_path_evidence(self):
        G = cycle_graph(7)
        cert = certify_path(G, 2)
        assert cert.evidence["kind"] == "path"
        assert validate_certificate(G, cert)

    def test_dataclass_and_dict_forms_agree(self, petersen_cert):
        cert = Certificate.from_json(petersen_cert)
        assert cert.to_json() == petersen_cert
        assert validate_certificate(petersen_graph(), cert)

    def test_from_json_rejects_unknown_fields(self, petersen_cert):
        with pytest.raises(GraphError):
            Certificate.from_json(dict(petersen_cert, extra=1))

    def test_save_and_load(self, tmp_path, petersen_cert):
        path = tmp_path / "petersen.cert.json"
        save_certificate(path, Certificate.from_json(petersen_cert))
        assert load_certificate(path) == petersen_cert


class TestRejections:
    @pytest.mark.parametrize(
        "change, fragment",
        [
            ({"version": CERTIFICATE_VERSION + 1}, "version"),
            ({"n": 11}, "n = 11"),
            ({"k": 0}, "invalid k"),
            ({"k": True}, "invalid k"),
            ({"problem": "walk"}, "problem"),
            ({"mode": "slow"}, "mode"),
            ({"verdict": "T2"}, "verdict"),
            ({"witness_source": "guess"}, "witness source"),
            ({"threshold": 9}, "threshold"),
            ({"verdict": "T0"}, "T1 only"),
            ({"witness_source": "recognizer"}, "search or oracle"),
            ({"problem": "path", "threshold": 9}, "path evidence"),
            ({"evidence": {"kind": "guess"}}, "unknown evidence"),
            ({"evidence": []}, "object"),
        ],
    )
    def test_tampered_cycle_certificate(self, petersen_cert, change, fragment):
        result = validate_certificate(petersen_graph(), dict(petersen_cert, **change))
        assert not result
        assert fragment in result.diagnostic

    def test_short_cycle(self, petersen_cert):
        data = copy.deepcopy(petersen_cert)
        data["evidence"]["vertices"] = data["evidence"]["vertices"][:7]
        assert not validate_certificate(petersen_graph(), data)

    def test_cycle_against_a_different_graph(self, petersen_cert):
        G = complete_bipartite_graph(5, 5)
        assert not validate_certificate(G, petersen_cert)

    def test_embedding_for_a_host_above_threshold(self, h_member):
        G, cert = h_member
        data = copy.deepcopy(cert)
        data["threshold"] = 6
        data["k"] = 2
        result = validate_certificate(G, data)
        assert not result and "allows" in result.diagnostic

    def test_embedding_with_t1_verdict(self, h_member):
        G, cert = h_member
        assert not validate_certificate(G, dict(cert, verdict="T1"))

    def test_embedding_with_broken_roles(self, h_member):
        G, cert = h_member
        data = copy.deepcopy(cert)
        data["evidence"]["roles"]["0"] = data["evidence"]["roles"]["1"]
        assert not validate_certificate(G, data)

    def test_malformed_embedding_never_raises(self, h_member):
        G, cert = h_member
        data = copy.deepcopy(cert)
        data["evidence"]["family"] = {"kind": "H", "n": "12"}
        result = validate_certificate(G, data)
        assert not result and "malformed" in result.diagnostic

    def test_min_cycle_with_wrong_k(self):
        G = complete_bipartite_graph(3, 4)
        data = certify(G, problem="min-cycle").to_json()
        data.update(k=2, threshold=6)
        result = validate_certificate(G, data)
        assert not result and "minimum degree" in result.diagnostic

    @pytest.mark.parametrize("junk", [None, "T1", [], {"version": CERTIFICATE_VERSION}])
    def test_junk_never_raises(self, junk):
        assert not validate_certificate(petersen_graph(), junk)
