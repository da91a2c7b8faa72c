"""
test_estimate.py — Tests de l'oracle par force brute, de la factorisation,
de l'estimation Monte Carlo et des courbes R(x).
"""

import os
import sys
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import csv
import math

import numpy as np
import pytest
from src.config import fixtures_dir
from src.errors import CapacityError, ParameterError
from src.estimate import (brute_force_rk, edge_order, estimate_spanning_trees, factoring_nk,
                          grid, monte_carlo_pk, reliability_curve, sample_subsets,
                          write_curve_csv, write_curves_csv)
from src.graph import complete_graph, cycle_graph, grid_graph, path_graph, read_edge_list
from src.incexc import exact_nk
from src.poly import CoefficientVector, nk_to_rk, rk_to_pk
from src.rules import RuleSpec


@pytest.fixture
def toy():
    return read_edge_list(fixtures_dir() / 'toy.edges')


@pytest.fixture
def triangle():
    return read_edge_list(fixtures_dir() / 'triangle.edges')


# ──────────────────────────────────────────────────────────────────────
#  Tests force brute
# ──────────────────────────────────────────────────────────────────────

class TestBruteForce:

    def test_triangle(self, triangle):
        assert brute_force_rk(triangle, RuleSpec.all_terminal()).coefficients == (0, 0, 3, 1)

    def test_toy(self, toy):
        rk = brute_force_rk(toy, RuleSpec.two_terminal(0, 3))
        assert rk_to_pk(rk)[9] == 1
        assert rk[3] == 1

    def test_threads_agree(self, toy):
        rule = RuleSpec.ear_alpha('1/2')
        assert brute_force_rk(toy, rule, threads=3) == brute_force_rk(toy, rule)

    def test_cap(self):
        with pytest.raises(CapacityError):
            brute_force_rk(grid_graph(3, 3), RuleSpec.all_terminal(), cap=10)


# ──────────────────────────────────────────────────────────────────────
#  Tests factorisation
# ──────────────────────────────────────────────────────────────────────

class TestFactoring:

    @pytest.mark.parametrize("rule", [
        RuleSpec.two_terminal(0, 3),
        RuleSpec.k_terminal([0, 3, 7]),
        RuleSpec.all_terminal(),
        RuleSpec.ar_alpha('1/2'),
        RuleSpec.ear_alpha('3/8'),
    ], ids=lambda r: r.kind)
    def test_matches_brute_force_on_toy(self, toy, rule):
        assert nk_to_rk(factoring_nk(toy, rule)) == brute_force_rk(toy, rule)

    def test_single_edge_ar_alpha(self):
        g = path_graph(2)
        assert factoring_nk(g, RuleSpec.ar_alpha(1)).nonzero() == {1: 1}

    def test_grid_table2_prefix(self):
        nk = factoring_nk(grid_graph(4, 4), RuleSpec.two_terminal(0, 15))
        assert [nk[k] for k in range(6, 11)] == [20, 0, 6, -84, 10]
        assert sum(nk.coefficients) == 1

    def test_grid_all_terminal_leading_term(self):
        nk = factoring_nk(grid_graph(3, 3), RuleSpec.all_terminal())
        assert nk.nonzero()[8] == 192
        assert min(nk.nonzero()) == 8

    def test_edge_order_is_permutation(self):
        g = grid_graph(3, 4)
        order = edge_order(g, RuleSpec.two_terminal(0, 11))
        assert sorted(order) == list(range(g.edge_count))


# ──────────────────────────────────────────────────────────────────────
#  Tests Monte Carlo
# ──────────────────────────────────────────────────────────────────────

class TestMonteCarlo:

    @pytest.mark.parametrize("name,rule", [
        ('triangle', RuleSpec.all_terminal()),
        ('cycle4', RuleSpec.all_terminal()),
        ('toy', RuleSpec.two_terminal(0, 3)),
    ])
    def test_calibration(self, name, rule, toy, triangle):
        g = {'triangle': triangle, 'cycle4': cycle_graph(4), 'toy': toy}[name]
        n = 100_000
        exact = rk_to_pk(brute_force_rk(g, rule))
        mc = monte_carlo_pk(g, rule, n, seed=11)
        for k, p in enumerate(exact.coefficients):
            p = float(p)
            bound = 4 * math.sqrt(p * (1 - p) / n)
            assert abs(mc.p_hat[k] - p) <= bound + 1e-12, k

    def test_same_seed_same_result(self, toy):
        rule = RuleSpec.two_terminal(0, 3)
        a = monte_carlo_pk(toy, rule, 3000, seed=5, block_size=512)
        b = monte_carlo_pk(toy, rule, 3000, seed=5, block_size=512, threads=4)
        assert a == b

    def test_different_seed(self, toy):
        rule = RuleSpec.two_terminal(0, 3)
        a = monte_carlo_pk(toy, rule, 2000, seed=1)
        b = monte_carlo_pk(toy, rule, 2000, seed=2)
        assert a.p_hat != b.p_hat

    def test_selected_sizes(self, toy):
        mc = monte_carlo_pk(toy, RuleSpec.two_terminal(0, 3), 100, ks=[9])
        assert mc.p_hat[9] == 1.0
        assert mc.p_hat[3] == 0.0

    def test_bad_parameters(self, toy):
        rule = RuleSpec.two_terminal(0, 3)
        with pytest.raises(ParameterError):
            monte_carlo_pk(toy, rule, 0)
        with pytest.raises(ParameterError):
            monte_carlo_pk(toy, rule, 10, ks=[10])

    def test_sample_subsets_distinct(self):
        rng = np.random.Generator(np.random.Philox(0))
        rows = sample_subsets(rng, 10, 4, 200)
        assert rows.shape == (200, 4)
        assert all(len(set(row.tolist())) == 4 for row in rows)

    def test_sample_subsets_large_edge_count(self):
        rng = np.random.Generator(np.random.Philox(3))
        rows = sample_subsets(rng, 10 ** 9, 3, 1000)
        assert rows.shape == (1000, 3)
        assert rows.min() >= 0 and rows.max() < 10 ** 9
        assert all(len(set(row.tolist())) == 3 for row in rows)

    def test_sample_subsets_matches_full_shuffle(self):
        E, k, m = 12, 7, 300
        got = sample_subsets(np.random.Generator(np.random.Philox(9)), E, k, m)
        rng = np.random.Generator(np.random.Philox(9))
        perm = np.tile(np.arange(E), (m, 1))
        rows = np.arange(m)
        for i in range(k):
            j = rng.integers(i, E, size=m)
            vi, vj = perm[rows, i].copy(), perm[rows, j].copy()
            perm[rows, i], perm[rows, j] = vj, vi
        assert np.array_equal(got, perm[:, :k])

    def test_sample_subsets_uniform_pairs(self):
        rng = np.random.Generator(np.random.Philox(21))
        m = 20000
        rows = sample_subsets(rng, 5, 2, m)
        counts = {}
        for a, b in rows.tolist():
            key = (min(a, b), max(a, b))
            counts[key] = counts.get(key, 0) + 1
        assert len(counts) == 10
        sigma = math.sqrt(m * 0.1 * 0.9)
        for key, c in counts.items():
            assert abs(c - m / 10) <= 5 * sigma, key

    def test_complement_draws_exact_cases(self, triangle):
        # k > E/2 : tirage des arêtes absentes
        rule = RuleSpec.all_terminal()
        assert monte_carlo_pk(cycle_graph(4), rule, 500, ks=[3]).p_hat[3] == 1.0
        assert monte_carlo_pk(path_graph(5), rule, 500, ks=[3]).p_hat[3] == 0.0
        assert monte_carlo_pk(triangle, rule, 500, ks=[2]).p_hat[2] == 1.0

    def test_complement_calibration(self):
        g = complete_graph(5)
        rule = RuleSpec.all_terminal()
        n = 20000
        exact = rk_to_pk(brute_force_rk(g, rule))
        mc = monte_carlo_pk(g, rule, n, seed=4, ks=range(6, 10))
        for k in range(6, 10):
            p = float(exact[k])
            bound = 4 * math.sqrt(p * (1 - p) / n)
            assert abs(mc.p_hat[k] - p) <= bound + 1e-12, k

    def test_csv(self, toy, tmp_path):
        mc = monte_carlo_pk(toy, RuleSpec.two_terminal(0, 3), 50)
        path = tmp_path / 'mc.csv'
        mc.write_csv(path)
        with open(path, newline='') as f:
            rows = list(csv.DictReader(f))
        assert len(rows) == 10
        assert rows[0].keys() == {'k', 'p_hat', 'std_err'}

    def test_spanning_tree_estimate(self):
        result = estimate_spanning_trees(complete_graph(5), 20000, seed=3)
        assert result.exact == 125
        assert abs(result.estimate - 125) <= 4 * result.std_err + 1e-9


# ──────────────────────────────────────────────────────────────────────
#  Tests courbes
# ──────────────────────────────────────────────────────────────────────

class TestCurves:

    def test_grid(self):
        xs = grid(5)
        assert [float(x) for x in xs] == [0.0, 0.25, 0.5, 0.75, 1.0]
        with pytest.raises(ParameterError):
            grid(1)

    def test_triangle_curve(self, triangle):
        nk = exact_nk(triangle, RuleSpec.all_terminal()).nk
        curve = reliability_curve(nk, 201)
        assert len(curve) == 201
        assert dict(curve)[0.5] == 0.5
        assert curve[0] == (0.0, 0.0) and curve[-1] == (1.0, 1.0)

    def test_monte_carlo_curve(self, toy):
        rule = RuleSpec.two_terminal(0, 3)
        mc = monte_carlo_pk(toy, rule, 4000, seed=7)
        exact = dict(reliability_curve(exact_nk(toy, rule).nk, 11))
        for x, r in reliability_curve(mc, 11):
            assert abs(r - exact[x]) < 0.05

    def test_log_space_agrees(self, toy):
        rule = RuleSpec.two_terminal(0, 3)
        mc = monte_carlo_pk(toy, rule, 500, seed=7)
        plain = reliability_curve(mc, 21)
        logged = reliability_curve(mc, 21, log_space_above=0)
        for (_, a), (_, b) in zip(plain, logged):
            assert a == pytest.approx(b, abs=1e-12)

    def test_write_curves(self, tmp_path):
        v = CoefficientVector.from_mapping('Nk', 2, {1: 1})
        write_curve_csv(reliability_curve(v, 3), tmp_path / 'one.csv')
        write_curves_csv({'a': reliability_curve(v, 3), 'b': reliability_curve(v, 3)},
                         tmp_path / 'two.csv')
        assert (tmp_path / 'one.csv').read_text().splitlines()[0] == 'x,R'
        assert (tmp_path / 'two.csv').read_text().splitlines()[0] == 'x,a,b'


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
