"""
perturbative.py — Estimations du terme d'ordre le plus bas N_kmin x^kmin.

  - famille quelconque        : (k_min, nombre de motifs de taille k_min)
  - all_terminal              : (V − 1, nombre d'arbres couvrants, Kirchhoff)
  - ar_alpha                  : arbres couvrant ⌈αV⌉ sommets
  - ear_alpha                 : un seul arbre de v sommets, v² + (V − v) ≥ αV²
  - étoile de chaînes         : construction où les motifs diffèrent deux à deux
                                de deux arêtes, comparée au calcul exact
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, NamedTuple, Tuple

from ..errors import DomainError, ParameterError
from ..graph.kirchhoff import spanning_tree_count
from ..graph.multigraph import ReliabilityGraph
from ..motifs.enumerators import enumerate_minimal_generic
from ..motifs.family import MotifFamily, minimal_size_and_count
from ..rules.rule_spec import RuleSpec, parse_alpha
from .coefficients import CoefficientVector, evaluate


def leading_term(family: MotifFamily) -> Tuple[int, int]:
    """(k_min, N_kmin) : seuls les motifs minimaux contribuent à l'ordre k_min."""
    return minimal_size_and_count(family)


def all_terminal_leading_term(graph: ReliabilityGraph) -> Tuple[int, int]:
    """(V − 1, τ(G)) sans énumérer les arbres."""
    count = spanning_tree_count(graph)
    if count == 0:
        raise DomainError("graphe non connexe : aucun arbre couvrant")
    return graph.vertex_count - 1, count


def ar_alpha_leading_term(graph: ReliabilityGraph, alpha,
                          verbose: bool = False) -> Tuple[int, int]:
    """(⌈αV⌉ − 1, nombre d'arbres couvrant exactement ⌈αV⌉ sommets)."""
    rule = RuleSpec.ar_alpha(alpha)
    family = enumerate_minimal_generic(graph, rule, verbose=verbose)
    k_min, count = leading_term(family)
    assert k_min == max(rule.threshold(graph.vertex_count) - 1, 0)
    return k_min, count


class EarKmin(NamedTuple):
    k_min: int
    tree_vertices: int
    approximation: float


def ear_alpha_kmin(vertex_count: int, alpha) -> EarKmin:
    """
    Plus petit arbre accepté par EAR-α : un arbre de v sommets et V − v
    sommets isolés, avec v² + (V − v) ≥ αV² (comparaison exacte).
    k_min = v − 1, approché par √α·V − 1.
    """
    if vertex_count < 1:
        raise ParameterError("V doit être ≥ 1")
    alpha = parse_alpha(alpha)
    if not 0 < alpha <= 1:
        raise ParameterError(f"0 < alpha ≤ 1 requis (reçu {alpha})")
    V = vertex_count
    needed = alpha * V * V
    v = 1
    while v * v + (V - v) < needed:
        v += 1
    assert v <= V
    return EarKmin(v - 1, v, math.sqrt(alpha) * V - 1)


# ------------------------------------------------------------------ #
#  Étoile de chaînes                                                  #
# ------------------------------------------------------------------ #

def star_of_chains_graph(chains: int, chain_len: int) -> ReliabilityGraph:
    """
    Centre 0 et `chains` chaînes de `chain_len` arêtes.
    Les arêtes sont numérotées chaîne par chaîne, du centre vers l'extrémité.
    """
    if chains < 1 or chain_len < 1:
        raise ParameterError("il faut au moins une chaîne d'au moins une arête")
    edges = []
    for i in range(chains):
        first = 1 + i * chain_len
        edges.append((0, first))
        for j in range(chain_len - 1):
            edges.append((first + j, first + j + 1))
    return ReliabilityGraph.from_edges(edges, 1 + chains * chain_len)


@dataclass
class StarOfChainsReport:
    chains: int
    chain_len: int
    alpha: Fraction
    motif_count: int
    pairwise_difference_two: bool
    exact: CoefficientVector
    oracle_agrees: bool
    deviations: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            'chains': self.chains,
            'chain_len': self.chain_len,
            'alpha': str(self.alpha),
            'motif_count': self.motif_count,
            'pairwise_difference_two': self.pairwise_difference_two,
            'exact_nk': self.exact.to_dict(),
            'exact_polynomial': self.exact.pretty(),
            'oracle_agrees': self.oracle_agrees,
            'max_deviation': self.deviations,
        }


def star_of_chains_report(chains: int, chain_len: int, grid_points: int = 101,
                          verbose: bool = False) -> StarOfChainsReport:
    """
    Étoile de chaînes sous AR-α avec ⌈αV⌉ = V − 1 : chaque motif est le graphe
    privé de la dernière arête d'une chaîne, un arbre à a = E sommets.
    Compare au polynôme exact, pour a = E et pour a = E − 1 :
      - 'product'    x^(a−2) (1 − x)^t
      - 'chain_form' x^(a−2) [1 − (1 − x)^t]
    """
    from ..estimate.brute_force import brute_force_rk
    from ..incexc.unions import nk_from_table, nkl_full
    from .coefficients import nk_to_rk

    if chains < 2:
        raise ParameterError("il faut au moins deux chaînes")
    graph = star_of_chains_graph(chains, chain_len)
    V, E = graph.vertex_count, graph.edge_count
    alpha = Fraction(V - 1, V)
    rule = RuleSpec.ar_alpha(alpha)

    family = enumerate_minimal_generic(graph, rule, verbose=verbose)
    masks = family.masks()
    pairwise = all((a ^ b).bit_count() == 2
                   for i, a in enumerate(masks) for b in masks[i + 1:])

    exact = nk_from_table(nkl_full(family, verbose=verbose))
    oracle_agrees = nk_to_rk(exact) == brute_force_rk(graph, rule)

    t = chains
    candidates = {}
    for a, tag in ((E, 'a=E'), (E - 1, 'a=E-1')):
        power = max(a - 2, 0)
        candidates[f'product[{tag}]'] = lambda x, p=power: x ** p * (1 - x) ** t
        candidates[f'chain_form[{tag}]'] = lambda x, p=power: x ** p * (1 - (1 - x) ** t)
    xs = [Fraction(i, grid_points - 1) for i in range(grid_points)]
    exact_values = [evaluate(exact, x) for x in xs]
    deviations = {name: float(max(abs(formula(x) - r) for x, r in zip(xs, exact_values)))
                  for name, formula in candidates.items()}

    if verbose:
        print(f"[Perturbatif] étoile t={t}, L={chain_len} : {family.motif_count} motifs, "
              f"R(x) = {exact.pretty()}, écarts {deviations}")
    return StarOfChainsReport(t, chain_len, alpha, family.motif_count, pairwise,
                              exact, oracle_agrees, deviations)
