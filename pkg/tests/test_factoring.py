import random

import pytest

from quboreduce import (
    FactoringReport,
    Graph,
    ParameterError,
    QuboMatrix,
    coupling_count,
    default_z,
    energy,
    enhance,
    factor_out,
    get_conflict_list,
    get_most_sym_qubits,
    graph_coloring_qubo,
    graph_isomorphism_qubo,
    hamilton_cycle_qubo,
    max_clique_qubo,
    min_energy_over_ancillas,
    sample_graph,
    spectrum,
    vertex_cover_qubo,
    verify_equivalence,
)
from quboreduce.factoring import factor_step, factoring_trajectory, is_conflicting
from quboreduce.graphs import permute_vertices, sample_permutation
from quboreduce.qubo import bits_from_index

from conftest import random_qubo


class TestGetConflictList:
    def test_diagonal_only(self):
        q = QuboMatrix(3, {(0, 0): -1, (1, 1): 2, (2, 2): -3})
        assert get_conflict_list(q) == []

    def test_demo_instance(self, demo_qubo):
        # every row sum of negatives is -1, and 3 > 2 for each coupling
        assert get_conflict_list(demo_qubo) == sorted(
            (i, j) for (i, j), _ in demo_qubo.entries() if i < j
        )

    def test_coupling_below_threshold(self):
        q = QuboMatrix(2, {(0, 0): -1, (1, 1): -1, (0, 1): 1})
        assert get_conflict_list(q) == []  # 1 > 2 is false

    def test_diagonal_exclusion_flag(self):
        q = QuboMatrix(2, {(0, 0): -1, (1, 1): -1, (0, 1): 1})
        # without diagonals both Z rows are 0, so 1 > 0 holds
        assert get_conflict_list(q, include_diagonal=False) == [(0, 1)]

    def test_agrees_with_semantic_test(self):
        # the row-sum condition is sufficient for a semantic conflict
        rng = random.Random(21)
        checked = 0
        for _ in range(40):
            q = random_qubo(rng, rng.randint(2, 7))
            for i, j in get_conflict_list(q):
                assert is_conflicting(q, i, j)
                checked += 1
        assert checked > 0


class TestGetMostSymQubits:
    def test_demo_instance(self, demo_qubo):
        best = get_most_sym_qubits(demo_qubo, get_conflict_list(demo_qubo))
        assert best.pair == (1, 4)
        assert best.syms == frozenset({0, 2, 5})
        assert best.eligible

    def test_empty_list_returns_sentinel(self, demo_qubo):
        best = get_most_sym_qubits(demo_qubo, [])
        assert best.pair == (0, 1)
        assert best.syms == frozenset()

    def test_no_shared_couplings(self):
        q = QuboMatrix(3, {(0, 0): -1, (1, 1): -1, (0, 1): 5, (1, 2): 2})
        best = get_most_sym_qubits(q, [(0, 1)])
        assert best.pair == (0, 1)
        assert best.syms == frozenset()

    def test_tie_goes_to_later_pair(self):
        # two disjoint blocks, each pair sharing 3 neighbors with equal weights
        q = QuboMatrix(10)
        for i, j, shared in [(0, 1, (2, 3, 4)), (5, 6, (7, 8, 9))]:
            q[i, i] = q[j, j] = -1
            q[i, j] = 5
            for k in shared:
                q[i, k] = q[j, k] = 2
        best = get_most_sym_qubits(q, [(0, 1), (5, 6)])
        assert best.pair == (5, 6)


class TestEnhance:
    def test_demo_instance(self, demo_qubo, demo_factored):
        out = enhance(demo_qubo, (1, 4), {0, 2, 5}, 3)
        assert out == demo_factored

    def test_coupling_accounting(self, demo_qubo):
        out = enhance(demo_qubo, (1, 4), {0, 2, 5}, 3)
        # pair already coupled: -2*|syms| removed, |syms| moved, +2 ancilla penalties
        assert coupling_count(out) == coupling_count(demo_qubo) - 3 + 2
        assert coupling_count(out) == 8

    def test_empty_syms_preserves_valid_energies(self):
        q = QuboMatrix(2, {(0, 0): -1, (1, 1): -1, (0, 1): 5})
        out = enhance(q, (0, 1), set(), 7)
        assert out.n == 3
        for m in range(4):
            bits = bits_from_index(m, 2)
            if not (bits[0] and bits[1]):
                assert min_energy_over_ancillas(out, 2, bits) == energy(q, bits)

    def test_rejects_bad_syms(self, demo_qubo):
        with pytest.raises(ParameterError):
            enhance(demo_qubo, (1, 4), {1, 2}, 3)
        with pytest.raises(ParameterError):
            enhance(demo_qubo, (1, 4), {3}, 3)  # (1,3) and (4,3) not shared

    def test_rejects_nonpositive_z(self, demo_qubo):
        with pytest.raises(ParameterError):
            enhance(demo_qubo, (1, 4), {0, 2, 5}, 0)


class TestFactorOut:
    def test_demo_instance(self, demo_qubo, demo_factored):
        q_mod, report = factor_out(demo_qubo, 1, 3)
        assert q_mod == demo_factored
        assert report.base_n == 6 and report.final_n == 7
        assert len(report.steps) == 1
        step = report.steps[0]
        assert (step.i, step.j) == (1, 4)
        assert step.syms == (0, 2, 5)
        assert step.ancilla == 6

    def test_zero_budget(self, demo_qubo):
        q_mod, report = factor_out(demo_qubo, 0, 3)
        assert q_mod == demo_qubo
        assert report.steps == []

    def test_stops_below_three_shared(self):
        # conflicting pair with only two shared neighbors: nothing to factor
        q = QuboMatrix(4, {(0, 0): -1, (1, 1): -1, (0, 1): 5, (0, 2): 2, (1, 2): 2, (0, 3): 2, (1, 3): 2})
        q_mod, report = factor_out(q, 10, 5)
        assert q_mod == q
        assert report.steps == []

    def test_rerun_on_saturated_output_is_stable(self, demo_qubo):
        q_mod, report = factor_out(demo_qubo, 29, 33)
        again, report2 = factor_out(q_mod, 29, 33)
        assert again == q_mod
        assert report2.steps == []

    def test_coupling_count_strictly_decreases_per_step(self):
        g = sample_graph(10, 18, seed=13)
        q = max_clique_qubo(g, 3)
        trajectory, report = factoring_trajectory(q, 20, default_z(q))
        for before, after, step in zip(trajectory, trajectory[1:], report.steps):
            drop = coupling_count(before) - coupling_count(after)
            assert drop == len(step.syms) - 2
            assert drop >= 1

    def test_report_json_round_trip(self, demo_qubo):
        _, report = factor_out(demo_qubo, 1, 3)
        restored = FactoringReport.loads(report.dumps())
        assert restored == report


class TestDefaultZ:
    def test_demo_instance(self, demo_qubo):
        assert default_z(demo_qubo) == 9 * 3 + 6 * 1

    def test_zero_matrix(self):
        assert default_z(QuboMatrix(4)) == 0

    def test_two_terms(self):
        assert default_z(QuboMatrix(2, {(0, 0): -1, (0, 1): 3})) == 4


class TestVerifyEquivalence:
    def test_demo_strong_penalty(self, demo_qubo):
        q_mod, report = factor_out(demo_qubo, 1, 9)
        verdict = verify_equivalence(demo_qubo, q_mod, report)
        assert verdict.valid_energies_preserved
        assert verdict.invalid_energies_nondecreasing
        assert verdict.minimum_preserved

    def test_demo_weak_penalty_keeps_minimum(self, demo_qubo):
        q_mod, report = factor_out(demo_qubo, 1, 3)
        verdict = verify_equivalence(demo_qubo, q_mod, report)
        assert not verdict.invalid_energies_nondecreasing
        assert verdict.minimum_preserved

    def test_empty_report(self, demo_qubo):
        _, report = factor_out(demo_qubo, 0, 3)
        verdict = verify_equivalence(demo_qubo, demo_qubo, report)
        assert verdict.all_ok

    def test_mismatched_report_rejected(self, demo_qubo, demo_factored):
        _, report = factor_out(demo_qubo, 0, 3)
        with pytest.raises(ParameterError):
            verify_equivalence(demo_qubo, demo_factored, report)


def _factor_and_verify(q, budget):
    z = default_z(q)
    if z == 0:
        return None
    q_mod, report = factor_out(q, budget, z)
    return verify_equivalence(q, q_mod, report)


class TestLandscapePreservationProperty:
    """Factoring with the coefficient-sum penalty never changes valid
    energies, never improves invalid ones, and keeps the global minimum."""

    def test_random_integer_qubos(self):
        rng = random.Random(2024)
        for _ in range(50):
            n = rng.randint(2, 10)
            q = random_qubo(rng, n, density=rng.uniform(0.3, 0.9))
            verdict = _factor_and_verify(q, budget=6)
            if verdict is not None:
                assert verdict.all_ok

    def test_encoder_outputs(self):
        g6 = sample_graph(6, 7, seed=31)
        g10 = sample_graph(10, 21, seed=32)
        g4 = sample_graph(4, 4, seed=33)
        g3 = sample_graph(3, 3, seed=34)
        cases = [
            max_clique_qubo(g10, 3),
            vertex_cover_qubo(g10, 3),
            graph_coloring_qubo(g4, 3, 3),
            hamilton_cycle_qubo(g3, 3),
            graph_isomorphism_qubo(g3, permute_vertices(g3, sample_permutation(3, 1)), 3),
            max_clique_qubo(g6, 3),
        ]
        for q in cases:
            verdict = _factor_and_verify(q, budget=6)
            assert verdict is not None and verdict.all_ok, q


class TestFactorStep:
    def test_returns_none_when_saturated(self):
        q = QuboMatrix(3, {(0, 0): -1, (1, 1): -1})
        assert factor_step(q, 5) is None

    def test_single_step_matches_factor_out(self, demo_qubo, demo_factored):
        out = factor_step(demo_qubo, 3)
        assert out is not None
        assert out[0] == demo_factored
