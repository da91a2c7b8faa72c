"""
test_motifs.py — Tests des énumérateurs de motifs structurels.
"""

import os
import sys
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fractions import Fraction

import pytest
from src.config import fixtures_dir
from src.errors import CapacityError, DomainError
from src.graph import (ReliabilityGraph, complete_graph, cycle_graph, grid_graph,
                       parse_edge_list, path_graph, read_edge_list)
from src.motifs import (MotifFamily, enumerate_minimal_generic, enumerate_motifs,
                        enumerate_paths, enumerate_spanning_trees, is_antichain,
                        minimal_size_and_count)
from src.poly import ear_alpha_kmin
from src.rules import RuleSpec


@pytest.fixture
def toy():
    return read_edge_list(fixtures_dir() / 'toy.edges')


# ──────────────────────────────────────────────────────────────────────
#  Tests chemins
# ──────────────────────────────────────────────────────────────────────

class TestPaths:

    def test_toy_three_paths(self, toy):
        family = enumerate_paths(toy, 0, 3)
        assert family.motif_count == 3
        assert family.size_histogram() == {3: 1, 4: 2}
        assert [m.indices() for m in family.motifs] == [(0, 1, 2), (3, 4, 5, 6), (3, 6, 7, 8)]

    def test_grid_corner_to_corner(self):
        family = enumerate_paths(grid_graph(4, 4), 0, 15)
        assert family.motif_count == 184
        assert min(family.sizes()) == 6
        assert max(family.sizes()) == 14
        assert family.size_histogram()[6] == 20

    def test_parallel_edges_give_distinct_paths(self):
        g = parse_edge_list("a b\na b\nb c\n")
        assert enumerate_paths(g, 0, 2).motif_count == 2

    def test_unreachable_target(self):
        g = ReliabilityGraph(4, [(0, 1), (2, 3)])
        family = enumerate_paths(g, 0, 3)
        assert family.motif_count == 0
        with pytest.raises(DomainError):
            minimal_size_and_count(family)

    def test_canonical_order(self, toy):
        family = enumerate_paths(toy, 0, 3)
        keys = [m.sort_key() for m in family.motifs]
        assert keys == sorted(keys)


# ──────────────────────────────────────────────────────────────────────
#  Tests arbres couvrants
# ──────────────────────────────────────────────────────────────────────

class TestSpanningTrees:

    def test_k4(self):
        family = enumerate_spanning_trees(complete_graph(4))
        assert family.motif_count == 16
        assert set(family.sizes()) == {3}

    def test_triangle(self):
        g = read_edge_list(fixtures_dir() / 'triangle.edges')
        assert enumerate_spanning_trees(g).masks() == (0b011, 0b101, 0b110)

    def test_disconnected_graph_has_no_tree(self):
        g = ReliabilityGraph(4, [(0, 1), (2, 3)])
        assert enumerate_spanning_trees(g).motif_count == 0

    def test_single_vertex(self):
        family = enumerate_spanning_trees(ReliabilityGraph(1, []))
        assert family.masks() == (0,)


# ──────────────────────────────────────────────────────────────────────
#  Tests énumérateur générique
# ──────────────────────────────────────────────────────────────────────

class TestGeneric:

    def test_generic_agrees_with_paths(self, toy):
        rule = RuleSpec.two_terminal(0, 3)
        assert enumerate_minimal_generic(toy, rule).masks() == enumerate_paths(toy, 0, 3).masks()

    def test_generic_agrees_with_trees(self):
        g = cycle_graph(5)
        generic = enumerate_minimal_generic(g, RuleSpec.all_terminal())
        assert generic.masks() == enumerate_spanning_trees(g).masks()

    def test_k_terminal_on_path(self):
        g = path_graph(4)
        family = enumerate_minimal_generic(g, RuleSpec.k_terminal([0, 3]))
        # chaque sommet doit rejoindre 0 ou 3 : coupure d'une seule arête
        assert family.size_histogram() == {2: 3}

    def test_ar_alpha_on_cycle(self):
        g = cycle_graph(6)
        family = enumerate_motifs(g, RuleSpec.ar_alpha('1/2'))
        assert family.size_histogram() == {2: 6}

    def test_unreachable_threshold_gives_empty_family(self):
        g = ReliabilityGraph(4, [(0, 1), (2, 3)])
        family = enumerate_motifs(g, RuleSpec.ar_alpha(1))
        assert family.motif_count == 0

    def test_edge_cap(self):
        with pytest.raises(CapacityError):
            enumerate_minimal_generic(grid_graph(3, 3), RuleSpec.ar_alpha('1/2'), edge_cap=10)

    def test_antichain(self, toy):
        for rule in (RuleSpec.two_terminal(0, 3), RuleSpec.ear_alpha('1/2')):
            assert is_antichain(enumerate_motifs(toy, rule))

    def test_not_antichain_detected(self):
        family = MotifFamily.from_masks(RuleSpec.all_terminal(), 3, [0b001, 0b011])
        assert not is_antichain(family)

    def test_ar_alpha_three_quarters_on_cycle4(self):
        family = enumerate_motifs(cycle_graph(4), RuleSpec.ar_alpha('3/4'))
        assert family.size_histogram() == {2: 4}

    def test_ear_alpha_one_is_spanning_trees(self):
        g = complete_graph(3)
        ear = enumerate_minimal_generic(g, RuleSpec.ear_alpha(1))
        assert ear.masks() == enumerate_spanning_trees(g).masks()

    def test_star_stops_after_first_full_stratum(self):
        star = ReliabilityGraph(25, [(0, i) for i in range(1, 25)])
        family = enumerate_minimal_generic(star, RuleSpec.ar_alpha(Fraction(2, 25)))
        assert family.size_histogram() == {1: 24}

    def test_ear_alpha_motifs_are_forests(self, toy):
        for g in (toy, grid_graph(2, 3), complete_graph(5)):
            for alpha in ('1/4', '1/2', '3/4'):
                for motif in enumerate_motifs(g, RuleSpec.ear_alpha(alpha)):
                    parts = g.components(motif)
                    assert motif.size == g.vertex_count - len(parts), (alpha, motif.indices())

    @pytest.mark.parametrize("V,alpha", [(V, a) for V in (3, 4, 5) for a in ('1/4', '1/2', '3/4', 1)]
                             + [(6, '1/4'), (6, '1/2')])
    def test_ear_alpha_kmin_matches_enumeration(self, V, alpha):
        family = enumerate_minimal_generic(complete_graph(V), RuleSpec.ear_alpha(alpha))
        assert minimal_size_and_count(family)[0] == ear_alpha_kmin(V, alpha).k_min

    @pytest.mark.parametrize("V", [6, 7, 8])
    @pytest.mark.parametrize("alpha", ['1/4', '1/2', '3/4', 1])
    def test_ear_alpha_kmin_matches_partitions(self, V, alpha):
        # sur K_V, une forêt peut réaliser n'importe quelle partition des sommets
        needed = Fraction(alpha) * V * V
        best = min(V - len(p) for p in partitions(V) if sum(s * s for s in p) >= needed)
        assert ear_alpha_kmin(V, alpha).k_min == best

    def test_family_to_dict(self, toy):
        data = enumerate_paths(toy, 0, 3).to_dict(toy)
        assert data['motif_count'] == 3
        assert data['histogram'] == {'3': 1, '4': 2}
        assert data['rule']['source'] == 'S'


def partitions(n: int, largest: int = None):
    """Partitions entières de n, parts décroissantes."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def grid33_with_diagonals() -> ReliabilityGraph:
    g = grid_graph(3, 3)
    return ReliabilityGraph(9, list(g.edges) + [(0, 4), (4, 8)])


# ──────────────────────────────────────────────────────────────────────
#  Tests complétude : accepté ⇔ contient un motif
# ──────────────────────────────────────────────────────────────────────

class TestCompleteness:

    @pytest.mark.parametrize("name,rules", [
        ('toy', ['two_terminal', 'k_terminal', 'all_terminal', 'ar_alpha', 'ear_alpha']),
        ('grid23', ['two_terminal', 'k_terminal', 'all_terminal', 'ar_alpha', 'ear_alpha']),
        ('k5', ['two_terminal', 'k_terminal', 'all_terminal', 'ar_alpha', 'ear_alpha']),
        ('grid33', ['two_terminal', 'ar_alpha', 'ear_alpha']),
        ('grid33_diag', ['two_terminal', 'ar_alpha']),
    ])
    def test_accepted_iff_contains_motif(self, name, rules, toy):
        g = {'toy': toy, 'grid23': grid_graph(2, 3), 'k5': complete_graph(5),
             'grid33': grid_graph(3, 3), 'grid33_diag': grid33_with_diagonals()}[name]
        assert g.edge_count <= 14
        last = g.vertex_count - 1
        specs = {
            'two_terminal': RuleSpec.two_terminal(0, last),
            'k_terminal': RuleSpec.k_terminal([0, last]),
            'all_terminal': RuleSpec.all_terminal(),
            'ar_alpha': RuleSpec.ar_alpha('1/2'),
            'ear_alpha': RuleSpec.ear_alpha('1/2'),
        }
        for kind in rules:
            rule = specs[kind]
            masks = enumerate_motifs(g, rule).masks()
            for mask in range(1 << g.edge_count):
                contains = any(m & mask == m for m in masks)
                assert rule.accepts_mask(g, mask) == contains, (kind, bin(mask))


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
