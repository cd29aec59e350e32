import pytest
from hypothesis import assume, given

from src.decide import (
    Decision,
    certify,
    check_preconditions,
    decide_exact,
    decide_fast,
    long_cycle_witness,
    require_preconditions,
    solve_min_circumference,
)
from src.families import Embedding, F1Spec, FSpec, HSpec, build_family, check_embedding
from src.graph_core import (
    GraphError,
    PreconditionError,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    degree_profile,
    empty_graph,
    petersen_graph,
    star_graph,
)
from src.harness import fast_agreement_specs
from src.longcycle import CycleWitness, validate_cycle
from src.oracle import circumference

from .strategies import PROPERTY_SETTINGS, biconnected_graphs


class TestPreconditions:
    def test_cycle_admits_two_only(self):
        report = check_preconditions(cycle_graph(6), 2)
        assert report.biconnected
        assert report.k_max == 2
        assert report.exceptional_vertex is None
        assert report.admits(2) and not report.admits(3)

    def test_exceptional_vertex(self):
        G, _ = build_family(F1Spec(2, 3))
        report = check_preconditions(G, 3)
        assert report.k_max == 3
        assert G.degree(report.exceptional_vertex) == 2

    def test_never_raises(self):
        assert not check_preconditions(empty_graph(0), 2).admits(2)
        assert not check_preconditions(star_graph(3), 1).biconnected

    @pytest.mark.parametrize(
        "G, k, check",
        [
            (star_graph(5), 2, "biconnected"),
            (petersen_graph(), 4, "degree"),
            (petersen_graph(), 1, "k"),
            (complete_graph(5), 2, "order"),
        ],
    )
    def test_require_names_the_failed_check(self, G, k, check):
        with pytest.raises(PreconditionError) as exc:
            require_preconditions(G, k, 2 * k + 2)
        assert exc.value.check == check


class TestExactDecision:
    def test_h_member_is_t0_with_embedding(self):
        G, _ = build_family(HSpec(12, 8, 3))
        decision = decide_exact(G, 3)
        assert decision.label == "T0"
        assert decision.threshold == 8
        assert isinstance(decision.evidence, Embedding)
        assert decision.witness_source == "recognizer"
        assert check_embedding(G, decision.evidence)

    def test_petersen_is_t1_with_cycle(self):
        G = petersen_graph()
        decision = decide_exact(G, 3)
        assert decision.verdict == 1
        assert isinstance(decision.evidence, CycleWitness)
        assert decision.witness_source in ("search", "oracle")
        assert validate_cycle(G, decision.evidence.cycle, min_length=8)

    def test_verdict_only(self):
        decision = decide_exact(petersen_graph(), 3, want_witness=False)
        assert decision.verdict == 1
        assert decision.evidence is None
        assert decision.witness_source == "none"

    def test_witness_helper_reports_source(self):
        witness, source = long_cycle_witness(complete_graph(8), 8)
        assert source == "search" and witness.length == 8
        assert long_cycle_witness(cycle_graph(7), 8) == (None, "none")

    @PROPERTY_SETTINGS
    @given(G=biconnected_graphs(min_n=6, max_n=10))
    def test_agrees_with_oracle(self, G):
        k = degree_profile(G).second_min_degree
        assume(k >= 2 and G.order >= 2 * k + 2)
        decision = decide_exact(G, k, want_witness=False)
        assert decision.verdict == int(circumference(G).value >= 2 * k + 2)
        if decision.verdict == 0:
            assert check_embedding(G, decision.evidence)


class TestFastDecision:
    def test_requires_k_at_least_five(self):
        with pytest.raises(PreconditionError):
            decide_fast(petersen_graph(), 3)

    def test_h_member(self):
        G, _ = build_family(HSpec(14, 12, 5))
        decision = decide_fast(G, 5)
        assert decision.label == "T0"
        assert decision.mode == "fast"
        assert check_embedding(G, decision.evidence)

    def test_dense_graph_is_t1_without_witness(self):
        decision = decide_fast(complete_graph(13), 5)
        assert decision.verdict == 1
        assert decision.evidence is None

    @pytest.mark.parametrize("k", [5, 6])
    def test_agrees_with_exact_on_members(self, k):
        for specs in fast_agreement_specs(k).values():
            for spec in specs:
                G, _ = build_family(spec)
                assert decide_fast(G, k).verdict == decide_exact(G, k, want_witness=False).verdict == 0

    def test_work_is_linear(self):
        k = 5
        works = []
        for n in (2000, 8000):
            G, _ = build_family(HSpec(n, 2 * k + 2, k))
            works.append(decide_fast(G, k).work / (k * n))
        assert max(works) < 10

    def test_reuses_a_precondition_report(self, monkeypatch):
        G, _ = build_family(HSpec(40, 12, 5))
        report = check_preconditions(G, 5)
        monkeypatch.setattr("src.decide.is_biconnected", lambda G: pytest.fail("biconnectivity re-checked"))
        decision = decide_fast(G, 5, preconditions=report)
        assert decision.label == "T0"
        assert check_embedding(G, decision.evidence)

    def test_report_must_describe_the_graph(self):
        report = check_preconditions(build_family(HSpec(40, 12, 5))[0], 5)
        with pytest.raises(GraphError):
            decide_fast(build_family(HSpec(41, 12, 5))[0], 5, preconditions=report)

    def test_report_still_gates_k(self):
        G, _ = build_family(HSpec(40, 12, 5))
        with pytest.raises(PreconditionError):
            decide_fast(G, 6, preconditions=check_preconditions(G, 6))


class TestMinCircumference:
    def test_complete_bipartite_is_t0(self):
        decision = solve_min_circumference(complete_bipartite_graph(3, 4))
        assert decision.threshold == 7
        assert decision.verdict == 0
        assert decision.evidence.spec == HSpec(7, 7, 3)

    def test_cycle_reaches_threshold(self):
        decision = solve_min_circumference(cycle_graph(7))
        assert decision.threshold == 6
        assert decision.verdict == 1

    def test_small_complete_graph_is_hamiltonian(self):
        G = complete_graph(5)
        decision = solve_min_circumference(G)
        assert decision.threshold == 5
        assert validate_cycle(G, decision.evidence.cycle, min_length=5)

    def test_requires_two_connectivity(self):
        with pytest.raises(PreconditionError):
            solve_min_circumference(star_graph(4))


class TestCertify:
    def test_certificate_for_t0(self):
        G, _ = build_family(FSpec(1, 1, 3))
        cert = certify(G, 3, mode="exact")
        assert cert.verdict == "T0"
        assert cert.evidence["kind"] == "embedding"
        assert cert.problem == "cycle" and cert.n == 8

    def test_auto_mode_picks_fast_for_large_k(self):
        G, _ = build_family(HSpec(14, 12, 5))
        assert certify(G, 5).mode == "fast"
        assert certify(G, 5, mode="exact").mode == "exact"

    def test_fast_t1_gets_a_witness(self):
        G = complete_graph(13)
        cert = certify(G, 5, mode="fast")
        assert cert.verdict == "T1"
        assert cert.evidence["kind"] == "cycle"
        assert len(cert.evidence["vertices"]) >= 12

    def test_min_cycle_uses_minimum_degree(self):
        cert = certify(complete_bipartite_graph(3, 4), problem="min-cycle")
        assert cert.k == 3
        assert cert.threshold == 7
        assert cert.verdict == "T0"

    def test_verdict_only_certificate(self):
        cert = certify(petersen_graph(), 3, want_witness=False, mode="exact")
        assert cert.verdict_only
        assert cert.witness_source == "none"

    def test_progress_callback(self):
        steps = []
        certify(petersen_graph(), 3, progress_callback=lambda message, current, total, step: steps.append(step))
        assert steps[0] == "decide" and steps[-1] == "done"

    @pytest.mark.parametrize(
        "kwargs",
        [{"k": 3, "mode": "quick"}, {"k": None}, {"k": 3, "problem": "path"}],
    )
    def test_bad_arguments(self, kwargs):
        with pytest.raises(GraphError):
            certify(petersen_graph(), **kwargs)

    def test_decision_label(self):
        assert Decision(8, 1).label == "T1"
