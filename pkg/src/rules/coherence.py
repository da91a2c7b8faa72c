"""
coherence.py — Vérification de la cohérence (monotonie) d'une règle.

Une règle est cohérente si l'ajout d'une arête à un sous-graphe accepté
donne encore un sous-graphe accepté. Deux contrôles :
  - is_coherent_witness   : tirages aléatoires de sous-graphes acceptés
  - is_monotone_exhaustive: parcours complet des 2^E sous-graphes (E ≤ 12)

Toute règle exposant `accepts_mask(graph, mask)` peut être testée.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..errors import CapacityError
from ..graph.multigraph import ReliabilityGraph

EXHAUSTIVE_EDGE_CAP = 12


@dataclass(frozen=True)
class CoherenceReport:
    """Résultat d'un contrôle ; vrai si aucun contre-exemple n'a été trouvé."""

    coherent: bool
    checked: int
    counterexample: Optional[Tuple[int, int]] = None   # (masque accepté, arête ajoutée)

    def __bool__(self) -> bool:
        return self.coherent


def _first_violation(rule, graph: ReliabilityGraph, mask: int) -> Optional[int]:
    """Arête dont l'ajout fait rejeter le sous-graphe accepté `mask`."""
    for e in range(graph.edge_count):
        bit = 1 << e
        if mask & bit:
            continue
        if not rule.accepts_mask(graph, mask | bit):
            return e
    return None


def is_coherent_witness(rule, graph: ReliabilityGraph,
                        trials: int = 1000, seed: int = 0) -> CoherenceReport:
    """
    Tire `trials` sous-graphes (taille k uniforme puis k arêtes uniformes) ;
    pour chacun accepté, vérifie tous ses sur-graphes à une arête près.
    """
    assert trials >= 1, "trials doit être ≥ 1"
    rng = np.random.Generator(np.random.Philox(seed))
    n_edges = graph.edge_count
    checked = 0
    for _ in range(trials):
        k = int(rng.integers(0, n_edges + 1))
        chosen = rng.permutation(n_edges)[:k]
        mask = 0
        for e in chosen:
            mask |= 1 << int(e)
        if not rule.accepts_mask(graph, mask):
            continue
        checked += 1
        edge = _first_violation(rule, graph, mask)
        if edge is not None:
            return CoherenceReport(False, checked, (mask, edge))
    return CoherenceReport(True, checked)


def is_monotone_exhaustive(rule, graph: ReliabilityGraph) -> CoherenceReport:
    """Monotonie vérifiée sur tous les sous-graphes (E ≤ 12)."""
    n_edges = graph.edge_count
    if n_edges > EXHAUSTIVE_EDGE_CAP:
        raise CapacityError(f"contrôle exhaustif limité à E ≤ {EXHAUSTIVE_EDGE_CAP}")
    accepted = [rule.accepts_mask(graph, mask) for mask in range(1 << n_edges)]
    for mask, ok in enumerate(accepted):
        if not ok:
            continue
        for e in range(n_edges):
            bit = 1 << e
            if not mask & bit and not accepted[mask | bit]:
                return CoherenceReport(False, 1 << n_edges, (mask, e))
    return CoherenceReport(True, 1 << n_edges)
