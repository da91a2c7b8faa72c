"""
enumerators.py — Énumération des motifs structurels.

Trois énumérateurs :
  1. Chemins simples S → T (two_terminal) : parcours en profondeur de
     networkx sur le multigraphe, chaque chemin rendu comme ensemble
     d'arêtes (les arêtes parallèles donnent des chemins distincts).
  2. Arbres couvrants (all_terminal) : récursion inclusion / suppression
     sur un arbre partiel ; une arête qui ferme un cycle dans l'arbre
     partiel est supprimée, et on ne supprime une arête que si le graphe
     restant reste connexe (détection de pont).
  3. Générique (k_terminal, ar_alpha, ear_alpha) : parcours des sous-graphes
     par taille croissante ; un sous-graphe accepté qui ne contient aucun
     motif déjà trouvé est minimal.
"""

from itertools import combinations
from typing import List, Optional

import networkx as nx
from tqdm import tqdm

from ..errors import CapacityError
from ..graph.multigraph import EXACT_EDGE_CAP, ReliabilityGraph
from ..rules.rule_spec import RuleSpec
from .family import MotifFamily

GENERIC_EDGE_CAP = 24


# ------------------------------------------------------------------ #
#  Chemins simples                                                    #
# ------------------------------------------------------------------ #

def enumerate_paths(graph: ReliabilityGraph, source: int, target: int,
                    verbose: bool = False) -> MotifFamily:
    """Tous les chemins simples de source à target, comme ensembles d'arêtes."""
    rule = RuleSpec.two_terminal(source, target)
    rule.validate_for(graph)
    graph.check_exact_capacity()

    masks = []
    for path in nx.all_simple_edge_paths(graph.nx_graph, source, target):
        mask = 0
        for _, _, key in path:
            mask |= 1 << key
        masks.append(mask)

    family = MotifFamily.from_masks(rule, graph.edge_count, masks)
    if verbose:
        print(f"[Motifs] {family.motif_count} chemins {graph.label(source)}→"
              f"{graph.label(target)}, tailles {family.size_histogram()}")
    return family


# ------------------------------------------------------------------ #
#  Arbres couvrants                                                   #
# ------------------------------------------------------------------ #

def enumerate_spanning_trees(graph: ReliabilityGraph,
                             verbose: bool = False) -> MotifFamily:
    """Tous les arbres couvrants ; famille vide si le graphe n'est pas connexe."""
    rule = RuleSpec.all_terminal()
    graph.check_exact_capacity()
    n = graph.vertex_count
    edges = graph.edges
    full = graph.full().mask

    if n == 1:
        return MotifFamily.from_masks(rule, graph.edge_count, [0])
    if not graph.is_connected_mask(full):
        return MotifFamily.from_masks(rule, graph.edge_count, [])

    trees: List[int] = []

    def rec(tree_mask: int, comp: list, available: int, n_tree: int):
        if n_tree == n - 1:
            trees.append(tree_mask)
            return

        # Première arête disponible hors de l'arbre qui ne ferme pas de cycle
        candidates = available & ~tree_mask
        e = -1
        while candidates:
            low = candidates & -candidates
            e = low.bit_length() - 1
            a, b = edges[e]
            if comp[a] != comp[b]:
                break
            available &= ~low
            candidates &= ~low
            e = -1
        if e < 0:
            return

        a, b = edges[e]
        keep, merged = comp[a], comp[b]
        rec(tree_mask | 1 << e, [keep if c == merged else c for c in comp],
            available, n_tree + 1)

        rest = available & ~(1 << e)
        if graph.is_connected_mask(rest):
            rec(tree_mask, comp, rest, n_tree)

    rec(0, list(range(n)), full, 0)

    family = MotifFamily.from_masks(rule, graph.edge_count, trees)
    if verbose:
        print(f"[Motifs] {family.motif_count} arbres couvrants (V={n}, E={graph.edge_count})")
    return family


# ------------------------------------------------------------------ #
#  Énumérateur générique                                              #
# ------------------------------------------------------------------ #

def enumerate_minimal_generic(graph: ReliabilityGraph, rule: RuleSpec,
                              edge_cap: int = GENERIC_EDGE_CAP,
                              verbose: bool = False) -> MotifFamily:
    """
    Sous-graphes acceptés minimaux, par strates de taille croissante.

    Parameters
    ----------
    edge_cap : E maximal accepté (au-delà → CapacityError, voir Monte Carlo)
    """
    rule.validate_for(graph)
    n_edges = graph.edge_count
    if n_edges > min(edge_cap, EXACT_EDGE_CAP):
        raise CapacityError(
            f"énumération générique limitée à E ≤ {min(edge_cap, EXACT_EDGE_CAP)} "
            f"(E = {n_edges}) : utiliser l'estimation Monte Carlo")

    kept: List[int] = []
    if rule.accepts_mask(graph, graph.full().mask):
        strata = tqdm(range(n_edges + 1), desc="[Motifs] strates", disable=not verbose)
        for k in strata:
            rejected = 0
            for combo in combinations(range(n_edges), k):
                mask = 0
                for e in combo:
                    mask |= 1 << e
                if any(m & mask == m for m in kept):
                    continue
                if rule.accepts_mask(graph, mask):
                    kept.append(mask)
                else:
                    rejected += 1
            # toute strate suivante ne contient que des sur-ensembles de motifs
            if rejected == 0:
                strata.close()
                break

    family = MotifFamily.from_masks(rule, n_edges, kept)
    if verbose:
        print(f"[Motifs] {rule.label(graph)} : {family.motif_count} motifs, "
              f"tailles {family.size_histogram()}")
    return family


def enumerate_motifs(graph: ReliabilityGraph, rule: RuleSpec,
                     edge_cap: Optional[int] = None,
                     verbose: bool = False) -> MotifFamily:
    """Choisit l'énumérateur adapté à la règle."""
    if rule.kind == 'two_terminal':
        return enumerate_paths(graph, rule.source, rule.target, verbose=verbose)
    if rule.kind == 'all_terminal':
        return enumerate_spanning_trees(graph, verbose=verbose)
    return enumerate_minimal_generic(graph, rule,
                                     edge_cap=edge_cap or GENERIC_EDGE_CAP,
                                     verbose=verbose)
