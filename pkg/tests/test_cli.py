import io
import json
import sys

import pytest

from src.cli import build_parser, run
from src.graph_core import cycle_graph, petersen_graph, read_graph, serialize_edge_list, star_graph
from src.system_health_checker import SystemHealthChecker


@pytest.fixture
def graph_file(tmp_path):
    def write(G, name="graph.txt"):
        path = tmp_path / name
        path.write_bytes(serialize_edge_list(G))
        return str(path)

    return write


class TestDecisions:
    def test_family_member_round_trip(self, tmp_path, capsys):
        graph = tmp_path / "h.txt"
        cert = tmp_path / "h.cert.json"
        assert run(["gen", "--family", "H", "--n", "12", "--ell", "8", "--a", "3", "--out", str(graph)]) == 0
        assert read_graph(graph).order == 12
        capsys.readouterr()

        code = run(["decide", "--input", str(graph), "--k", "3", "--json", "--out", str(cert), "--quiet"])
        assert code == 1
        data = json.loads(capsys.readouterr().out)
        assert data["verdict"] == "T0"
        assert data["evidence"]["kind"] == "embedding"

        assert run(["check", "--graph", str(graph), "--certificate", str(cert)]) == 0

    def test_long_cycle_exits_zero(self, graph_file):
        assert run(["decide", "--input", graph_file(petersen_graph()), "--k", "3", "--quiet"]) == 0

    def test_min_form(self, graph_file, capsys):
        assert run(["decide", "--input", graph_file(cycle_graph(7)), "--min-form", "--json", "--quiet"]) == 0
        assert json.loads(capsys.readouterr().out)["problem"] == "min-cycle"

    def test_path_decide(self, graph_file, capsys):
        assert run(["path-decide", "--input", graph_file(cycle_graph(7)), "--k", "2", "--json"]) == 0
        assert json.loads(capsys.readouterr().out)["evidence"]["kind"] == "path"

    def test_tampered_certificate_is_rejected(self, graph_file, tmp_path):
        path = graph_file(petersen_graph())
        cert = tmp_path / "p.cert.json"
        assert run(["decide", "--input", path, "--k", "3", "--out", str(cert), "--quiet"]) == 0
        data = json.loads(cert.read_text())
        data["threshold"] = 9
        cert.write_text(json.dumps(data))
        assert run(["check", "--graph", path, "--certificate", str(cert)]) == 1

    def test_stdin(self, monkeypatch, capsys):
        monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(serialize_edge_list(petersen_graph()))))
        assert run(["decide", "--input", "-", "--k", "3", "--json", "--quiet"]) == 0
        assert json.loads(capsys.readouterr().out)["n"] == 10


class TestErrors:
    def test_precondition_failure(self, graph_file, capsys):
        assert run(["decide", "--input", graph_file(star_graph(5)), "--k", "2"]) == 2
        assert "❌" in capsys.readouterr().err

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("3 1\n0 9\n")
        assert run(["decide", "--input", str(path), "--k", "2"]) == 2

    def test_missing_file(self, tmp_path):
        assert run(["oracle", "--input", str(tmp_path / "absent.txt")]) == 2

    def test_decide_needs_k(self, graph_file):
        assert run(["decide", "--input", graph_file(petersen_graph())]) == 2

    def test_unknown_command(self):
        assert run(["frobnicate"]) == 2

    def test_family_needs_parameters(self):
        assert run(["gen", "--family", "JC", "--s", "1"]) == 2


class TestTools:
    def test_oracle(self, graph_file, capsys):
        assert run(["oracle", "--input", graph_file(cycle_graph(7)), "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["quantity"] == "circumference"
        assert data["value"] == 7

    def test_oracle_uv(self, graph_file, capsys):
        assert run(["oracle", "--input", graph_file(cycle_graph(6)), "--uv", "0", "3"]) == 0
        assert capsys.readouterr().out.strip() == "longest_uv_path_order = 4"

    def test_turan_construction(self, capsys):
        assert run(["turan", "--n", "9", "--k", "3", "--construct"]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "9 13"

    def test_turan_verification(self, capsys):
        assert run(["turan", "--n", "8", "--k", "2", "--verify", "--json"]) == 0
        assert json.loads(capsys.readouterr().out)["extremal_graphs"] == 315

    def test_random_generator(self, tmp_path):
        out = tmp_path / "random.g6"
        assert run(["gen", "--random", "--n", "11", "--k", "3", "--seed", "2", "--format", "graph6", "--out", str(out)]) == 0
        assert read_graph(out).order == 11


class TestCampaigns:
    def test_verify_json(self, capsys):
        assert run(["verify", "family-bounds", "--k", "2", "--max-n", "8", "--quiet", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["passed"] is True
        assert data["parameters"] == {"k_range": [2], "max_order": 8}

    def test_fault_injection_and_replay(self, tmp_path):
        report = tmp_path / "report.json"
        args = ["verify", "family-bounds", "--k", "2", "--max-n", "8", "--quiet", "--inject-fault", "--save", str(report)]
        assert run(args) == 1
        assert len(json.loads(report.read_text())["violations"]) == 1
        assert run(["replay", "--report", str(report)]) == 0

    @pytest.mark.parametrize("alias", ["theorem16", "lemma23", "theorem33"])
    def test_campaign_aliases_parse(self, alias):
        assert build_parser().parse_args(["verify", alias]).campaign == alias

    def test_cycle_alias_runs(self, capsys):
        assert run(["verify", "theorem16", "--max-n", "6", "--quiet", "--json"]) == 0
        assert json.loads(capsys.readouterr().out)["campaign"] == "cycles"

    @pytest.mark.slow
    def test_cycle_alias_up_to_seven(self):
        assert run(["verify", "theorem16", "--max-n", "7", "--quiet"]) == 0

    def test_parser_lists_campaigns(self):
        args = build_parser().parse_args(["verify", "cycles", "--max-n", "6", "--k", "2", "3"])
        assert args.k == [2, 3]
        assert args.save is None


class TestHealth:
    def test_quick(self):
        assert run(["health", "--quick"]) == 0

    def test_checks(self):
        checker = SystemHealthChecker()
        assert checker.check_oracle()
        assert checker.check_recognizer()
        assert checker.check_fault_injection()
