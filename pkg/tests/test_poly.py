"""
test_poly.py — Tests des coefficients, changements de base, formes closes,
contraintes et estimations du terme dominant.
"""

import os
import sys
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import random
from fractions import Fraction
from math import comb, sqrt

import pytest
import sympy
from src.config import fixtures_dir
from src.errors import ConstraintError, DomainError, InfeasibleError, ParameterError
from src.estimate import brute_force_rk
from src.graph import (ReliabilityGraph, complete_graph, cycle_graph, grid_graph,
                       parse_edge_list, path_graph, read_edge_list)
from src.incexc import exact_nk
from src.poly import (CoefficientVector, NklTable, all_terminal_leading_term,
                      ar_alpha_leading_term, check_constraints, closed_form_chain_overlap,
                      closed_form_disjoint, disjoint_motifs_rk, ear_alpha_kmin, evaluate,
                      nk_to_rk, parse_x, pk_to_rk, rk_to_nk, rk_to_pk, sign_changes,
                      single_motif_rk, sparse_nk_solutions, star_of_chains_report,
                      two_overlapping_rk)
from src.rules import RuleSpec

TABLE1 = {(1, 3): 3, (1, 5): 1, (2, 5): 2, (2, 6): 3, (2, 7): 1, (3, 7): 4, (4, 7): 1}


def nk(values, edge_count):
    return CoefficientVector.from_mapping('Nk', edge_count, values)


def parallel_paths(m: int, k0: int, pendant: int = 0) -> ReliabilityGraph:
    """m chemins disjoints de k0 arêtes entre S = 0 et T = 1, plus des arêtes pendantes."""
    edges, nxt = [], 2
    for _ in range(m):
        prev = 0
        for step in range(k0):
            if step == k0 - 1:
                edges.append((prev, 1))
            else:
                edges.append((prev, nxt))
                prev, nxt = nxt, nxt + 1
    for _ in range(pendant):
        edges.append((0, nxt))
        nxt += 1
    return ReliabilityGraph(nxt, edges)


def shared_core(k0: int, delta: int, branches: int = 2) -> ReliabilityGraph:
    """Tronc commun de k0 − Δ arêtes puis `branches` chemins disjoints de Δ arêtes."""
    edges, prev, nxt = [], 0, 2
    for _ in range(k0 - delta):
        edges.append((prev, nxt))
        prev, nxt = nxt, nxt + 1
    hub = prev
    for _ in range(branches):
        prev = hub
        for step in range(delta):
            if step == delta - 1:
                edges.append((prev, 1))
            else:
                edges.append((prev, nxt))
                prev, nxt = nxt, nxt + 1
    return ReliabilityGraph(nxt, edges)


# ──────────────────────────────────────────────────────────────────────
#  Tests CoefficientVector
# ──────────────────────────────────────────────────────────────────────

class TestCoefficientVector:

    def test_length_checked(self):
        with pytest.raises(ParameterError):
            CoefficientVector('Nk', 3, (0, 1))

    def test_unknown_basis(self):
        with pytest.raises(ParameterError):
            CoefficientVector.zeros('Qk', 2)

    def test_to_dict_uses_strings(self):
        v = nk({3: 1, 4: 2}, 5)
        data = v.to_dict()
        assert data['coefficients'] == ['0', '0', '0', '1', '2', '0']
        assert CoefficientVector.from_dict(data) == v

    def test_pretty(self):
        x = sympy.Symbol('x')
        text = nk({3: 1, 4: 2, 6: -1}, 9).pretty()
        assert sympy.sympify(text) == x ** 3 + 2 * x ** 4 - x ** 6

    def test_with_edge_count(self):
        v = nk({2: 1}, 3).with_edge_count(5)
        assert v.edge_count == 5 and v.nonzero() == {2: 1}
        with pytest.raises(ParameterError):
            nk({4: 1}, 4).with_edge_count(3)


# ──────────────────────────────────────────────────────────────────────
#  Tests changements de base
# ──────────────────────────────────────────────────────────────────────

class TestBases:

    def test_table1_nk_to_rk(self):
        rk = nk_to_rk(nk({3: 3, 5: -1, 6: -3, 7: 2}, 7))
        assert rk.coefficients == (0, 0, 0, 3, 12, 17, 7, 1)

    def test_table1_reverse(self):
        rk = CoefficientVector('Rk', 7, (0, 0, 0, 3, 12, 17, 7, 1))
        assert rk_to_nk(rk).nonzero() == {3: 3, 5: -1, 6: -3, 7: 2}

    def test_triangle_all_terminal(self):
        rk = CoefficientVector('Rk', 3, (0, 0, 3, 1))
        assert rk_to_nk(rk).nonzero() == {2: 3, 3: -2}
        assert rk_to_pk(rk).coefficients == (0, 0, 1, 1)
        assert evaluate(rk, '1/2') == Fraction(1, 2)

    def test_pk_round_trip(self):
        rk = CoefficientVector('Rk', 4, (0, 1, 4, 4, 1))
        assert pk_to_rk(rk_to_pk(rk)) == rk

    def test_pk_not_integral(self):
        with pytest.raises(ParameterError):
            pk_to_rk(CoefficientVector('Pk', 2, (0, Fraction(1, 3), 0)))

    def test_wrong_basis(self):
        with pytest.raises(ParameterError):
            nk_to_rk(CoefficientVector.zeros('Rk', 2))

    def test_all_bases_agree(self):
        v = nk({3: 1, 4: 2, 6: -1, 7: -2, 9: 1}, 9)
        rk = nk_to_rk(v)
        for x in ('0', '1/3', '0.618', '1'):
            assert evaluate(v, x) == evaluate(rk, x) == evaluate(rk_to_pk(rk), x)

    def test_truncation_carried(self):
        v = CoefficientVector.from_mapping('Nk', 24, {6: 20, 8: 6}, truncation=10)
        assert nk_to_rk(v).truncation == 10


# ──────────────────────────────────────────────────────────────────────
#  Tests évaluation
# ──────────────────────────────────────────────────────────────────────

class TestEvaluate:

    def test_parse_x(self):
        assert parse_x('1/4') == Fraction(1, 4)
        assert parse_x(1) == Fraction(1)
        assert isinstance(parse_x(0.25), float)

    @pytest.mark.parametrize("bad", ['1.5', -0.1, 'x'])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            parse_x(bad)

    def test_float_and_exact(self):
        v = nk({1: 1, 2: -1}, 2)
        assert evaluate(v, '1/2') == Fraction(1, 4)
        assert evaluate(v, 0.5) == 0.25

    def test_endpoints(self):
        v = nk({3: 1, 4: 2, 6: -1, 7: -2, 9: 1}, 9)
        assert evaluate(v, 0) == 0
        assert evaluate(v, 1) == 1


# ──────────────────────────────────────────────────────────────────────
#  Tests formes closes
# ──────────────────────────────────────────────────────────────────────

class TestClosedForms:

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    @pytest.mark.parametrize("k0", [1, 2, 3])
    def test_disjoint_matches_brute_force(self, m, k0):
        g = parallel_paths(m, k0)
        expected = brute_force_rk(g, RuleSpec.two_terminal(0, 1))
        assert nk_to_rk(closed_form_disjoint(m, k0, g.edge_count)) == expected

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    @pytest.mark.parametrize("k0", [1, 2, 4])
    def test_chain_overlap_matches_brute_force(self, m, k0):
        # tronc de k0 − 1 arêtes puis m arêtes parallèles vers T
        g = shared_core(k0, 1, branches=m)
        expected = brute_force_rk(g, RuleSpec.two_terminal(0, 1))
        assert nk_to_rk(closed_form_chain_overlap(m, k0, g.edge_count)) == expected

    def test_disjoint_infeasible(self):
        with pytest.raises(InfeasibleError):
            closed_form_disjoint(3, 2, 5)

    def test_sparse_two_supports(self):
        assert sparse_nk_solutions(2, 3, 5).nonzero() == {3: 2, 5: -1}
        with pytest.raises(ConstraintError):
            sparse_nk_solutions(3, 3, 5)
        with pytest.raises(ConstraintError):
            sparse_nk_solutions(2, 3, 7)

    def test_sparse_three_supports(self):
        v = sparse_nk_solutions(3, 2, 4, 6)
        assert v.nonzero() == {2: 3, 4: -3, 6: 1}
        assert sum(v.coefficients) == 1
        with pytest.raises(ConstraintError):
            sparse_nk_solutions(2, 2, 4, 6)

    def test_single_motif_rk(self):
        g = parallel_paths(1, 3, pendant=2)
        assert single_motif_rk(3, 5) == brute_force_rk(g, RuleSpec.two_terminal(0, 1))

    @pytest.mark.parametrize("n,k0", [(2, 2), (3, 1), (2, 3)])
    def test_disjoint_motifs_rk(self, n, k0):
        g = parallel_paths(n, k0, pendant=1)
        expected = brute_force_rk(g, RuleSpec.two_terminal(0, 1))
        assert disjoint_motifs_rk(n, k0, g.edge_count) == expected

    @pytest.mark.parametrize("k0,delta", [(3, 1), (3, 2), (4, 2), (3, 3)])
    def test_two_overlapping_rk(self, k0, delta):
        g = shared_core(k0, delta)
        expected = brute_force_rk(g, RuleSpec.two_terminal(0, 1))
        assert two_overlapping_rk(k0, delta, g.edge_count) == expected

    def test_two_overlapping_bad_delta(self):
        with pytest.raises(ParameterError):
            two_overlapping_rk(2, 3, 10)


# ──────────────────────────────────────────────────────────────────────
#  Tests contraintes
# ──────────────────────────────────────────────────────────────────────

class TestConstraints:

    def test_table1_identities(self):
        table = NklTable(7, 4, TABLE1)
        report = check_constraints(table, nk({3: 3, 5: -1, 6: -3, 7: 2}, 7))
        assert report.passed
        # Σ|N_k| = 9 alors que 2^f − 1 = 15 : rapporté, pas imposé
        assert report.abs_sum == 9
        assert not report.abs_sum_matches

    def test_inconsistent_nk_detected(self):
        table = NklTable(7, 4, TABLE1)
        report = check_constraints(table, nk({3: 3, 5: -1, 6: -3, 7: 1}, 7))
        assert not report.passed
        assert {c.name for c in report.failures()} >= {'nk_matches_table', 'nk_sum'}
        with pytest.raises(ConstraintError):
            report.raise_if_failed()

    def test_bad_level_sum(self):
        table = NklTable(7, 4, {**TABLE1, (4, 7): 2})
        report = check_constraints(table, nk({3: 3, 5: -1, 6: -3, 7: 1}, 7))
        names = {c.name for c in report.failures()}
        assert 'level_sums' in names and 'signed_mass' in names

    def test_truncated_table_is_partial(self):
        table = NklTable(24, 184, {(1, 6): 20, (1, 8): 36, (2, 8): 30}, truncation=8)
        report = check_constraints(table, CoefficientVector.from_mapping(
            'Nk', 24, {6: 20, 8: 6}, truncation=8))
        assert report.partial
        assert report.passed
        assert {c.name for c in report.checks} == {'nk_matches_table', 'overlap_bounds'}

    def test_empty_family(self):
        report = check_constraints(NklTable(3, 0, {}), CoefficientVector.zeros('Nk', 3))
        assert report.empty_family
        assert report.passed

    def test_to_dict(self):
        data = check_constraints(NklTable(7, 4, TABLE1), nk({3: 3, 5: -1, 6: -3, 7: 2}, 7)).to_dict()
        assert data['abs_sum'] == '9'
        assert data['passed'] is True


# ──────────────────────────────────────────────────────────────────────
#  Tests racines
# ──────────────────────────────────────────────────────────────────────

class TestSignChanges:

    def test_golden_ratio_root(self):
        roots = sign_changes(lambda x: 1 - 2 * x + x ** 3)
        assert len(roots) == 1
        assert abs(roots[0].x_star - (sqrt(5) - 1) / 2) < 1e-9
        assert roots[0].width <= 1e-9

    def test_touching_zero_not_reported(self):
        assert sign_changes(lambda x: (2 * x - 1) ** 2) == []

    def test_exact_grid_root(self):
        roots = sign_changes(lambda x: x - Fraction(1, 2), scan_points=5)
        assert len(roots) == 1
        assert roots[0].x_star == 0.5


# ──────────────────────────────────────────────────────────────────────
#  Tests terme dominant
# ──────────────────────────────────────────────────────────────────────

class TestLeadingTerm:

    def test_all_terminal_grid(self):
        assert all_terminal_leading_term(grid_graph(4, 4)) == (15, 100352)

    def test_all_terminal_disconnected(self):
        with pytest.raises(DomainError):
            all_terminal_leading_term(ReliabilityGraph(3, [(0, 1)]))

    def test_ar_alpha_k4(self):
        # ⌈V/2⌉ = 2 sommets : une arête suffit
        assert ar_alpha_leading_term(complete_graph(4), '1/2') == (1, 6)

    def test_ar_alpha_triangle(self):
        g = parse_edge_list("a b\nb c\nc a\n")
        assert ar_alpha_leading_term(g, 1) == (2, 3)

    def test_ear_alpha_kmin(self):
        result = ear_alpha_kmin(10, '1/4')
        # v = 5 : 25 + 5 = 30 ≥ 25 ; v = 4 : 16 + 6 = 22 < 25
        assert result.tree_vertices == 5
        assert result.k_min == 4
        assert result.approximation == pytest.approx(4.0)

    def test_ear_alpha_full(self):
        assert ear_alpha_kmin(6, 1).k_min == 5

    def test_star_of_chains_two(self):
        report = star_of_chains_report(2, 2)
        assert report.motif_count == 2
        assert report.pairwise_difference_two
        assert report.oracle_agrees
        assert report.deviations['chain_form[a=E]'] == 0.0

    def test_star_of_chains_three(self):
        report = star_of_chains_report(3, 2, grid_points=21)
        assert report.motif_count == 3
        assert report.pairwise_difference_two
        # R(x) = 3x⁵ − 2x⁶
        assert report.exact.nonzero() == {5: 3, 6: -2}
        assert set(report.deviations) == {'product[a=E]', 'chain_form[a=E]',
                                          'product[a=E-1]', 'chain_form[a=E-1]'}

    def test_star_needs_two_chains(self):
        with pytest.raises(ParameterError):
            star_of_chains_report(1, 3)


# ──────────────────────────────────────────────────────────────────────
#  Tests invariants sur des polynômes calculés
# ──────────────────────────────────────────────────────────────────────

def computed_cases():
    toy = read_edge_list(fixtures_dir() / 'toy.edges')
    for g in (toy, grid_graph(2, 3), complete_graph(4), cycle_graph(5), path_graph(4)):
        last = g.vertex_count - 1
        for rule in (RuleSpec.two_terminal(0, last), RuleSpec.k_terminal([0, last]),
                     RuleSpec.all_terminal(), RuleSpec.ar_alpha('1/2'),
                     RuleSpec.ear_alpha('1/2')):
            yield g, rule, exact_nk(g, rule)


class TestInvariants:

    GRID = [Fraction(i, 100) for i in range(101)]

    def test_bases_agree_on_101_points(self):
        v = nk({3: 1, 4: 2, 6: -1, 7: -2, 9: 1}, 9)
        rk = nk_to_rk(v)
        pk = rk_to_pk(rk)
        for x in self.GRID:
            assert evaluate(v, x) == evaluate(rk, x) == evaluate(pk, x), x

    def test_round_trip_unit_vectors(self):
        for E in range(1, 13):
            for k in range(1, E + 1):
                coeffs = [0] * (E + 1)
                coeffs[k] = 1
                rk = CoefficientVector('Rk', E, tuple(coeffs))
                assert nk_to_rk(rk_to_nk(rk)) == rk, (E, k)

    def test_round_trip_random_vectors(self):
        rng = random.Random(64)
        for _ in range(40):
            E = rng.randint(13, 64)
            coeffs = [0] + [rng.randint(0, comb(E, k)) for k in range(1, E + 1)]
            rk = CoefficientVector('Rk', E, tuple(coeffs))
            assert nk_to_rk(rk_to_nk(rk)) == rk, E

    def test_reliability_in_unit_interval(self):
        for g, rule, result in computed_cases():
            for x in self.GRID:
                assert 0 <= evaluate(result.nk, x) <= 1, (rule.kind, g.edges, x)

    def test_pk_non_decreasing(self):
        for g, rule, result in computed_cases():
            pk = rk_to_pk(nk_to_rk(result.nk)).coefficients
            assert all(a <= b for a, b in zip(pk, pk[1:])), (rule.kind, g.edges)

    def test_constraints_on_exact_tables(self):
        checked = 0
        for g, rule, result in computed_cases():
            if result.table is None:
                continue
            report = check_constraints(result.table, result.nk)
            assert report.passed, (rule.kind, g.edges, [c.name for c in report.failures()])
            checked += 1
        assert checked >= 10


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
