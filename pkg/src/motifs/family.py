"""
family.py — Famille de motifs structurels (sous-graphes P-minimaux).

Une famille est dédupliquée par masque et triée canoniquement
(taille, puis valeur du masque) pour des sorties reproductibles.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

from ..errors import DomainError
from ..graph.multigraph import EdgeSet, ReliabilityGraph
from ..rules.rule_spec import RuleSpec


@dataclass(frozen=True)
class MotifFamily:
    """
    Motifs d'un graphe sous une règle.

    Parameters
    ----------
    rule       : règle ayant produit la famille
    edge_count : E du graphe
    motifs     : EdgeSet, triés par (taille, masque), sans doublon
    """

    rule: RuleSpec
    edge_count: int
    motifs: Tuple[EdgeSet, ...]

    @classmethod
    def from_masks(cls, rule: RuleSpec, edge_count: int,
                   masks: Iterable[int]) -> "MotifFamily":
        unique = sorted(set(masks), key=lambda m: (m.bit_count(), m))
        return cls(rule, edge_count, tuple(EdgeSet(m, edge_count) for m in unique))

    @property
    def motif_count(self) -> int:
        """f, le nombre total de motifs."""
        return len(self.motifs)

    def masks(self) -> Tuple[int, ...]:
        return tuple(m.mask for m in self.motifs)

    def sizes(self) -> Tuple[int, ...]:
        return tuple(m.size for m in self.motifs)

    def size_histogram(self) -> Dict[int, int]:
        """Nombre de motifs par taille (N_k^(1))."""
        return dict(sorted(Counter(self.sizes()).items()))

    def to_dict(self, graph: Optional[ReliabilityGraph] = None) -> dict:
        return {
            'rule': self.rule.to_dict(graph),
            'edge_count': self.edge_count,
            'motif_count': self.motif_count,
            'histogram': {str(k): v for k, v in self.size_histogram().items()},
            'motifs': [list(m.indices()) for m in self.motifs],
        }

    def __len__(self) -> int:
        return len(self.motifs)

    def __iter__(self):
        return iter(self.motifs)


def minimal_size_and_count(family: MotifFamily) -> Tuple[int, int]:
    """(k_min, nombre de motifs de taille k_min)."""
    if not family.motifs:
        raise DomainError("famille de motifs vide : k_min non défini")
    k_min = family.motifs[0].size
    count = sum(1 for m in family.motifs if m.size == k_min)
    return k_min, count


def is_antichain(family: MotifFamily) -> bool:
    """Aucun motif n'est contenu dans un autre."""
    masks = family.masks()
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if a & b == a or a & b == b:
                return False
    return True
