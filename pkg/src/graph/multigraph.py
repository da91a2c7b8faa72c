"""
multigraph.py — Multigraphe non orienté à arêtes indexées.

Le graphe est l'univers E du modèle de dommage : chaque arête a un indice
stable (ordre du fichier) et un sous-graphe est un masque d'arêtes (EdgeSet).
Les arêtes parallèles sont conservées comme arêtes distinctes ; les boucles
sont refusées.

Le conteneur sous-jacent est un networkx.MultiGraph dont la clé de chaque
arête est son indice.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx
from networkx.utils import UnionFind

from ..errors import CapacityError, GraphParseError, SelfLoopError

EXACT_EDGE_CAP = 128


# ------------------------------------------------------------------ #
#  Sous-ensembles d'arêtes                                            #
# ------------------------------------------------------------------ #

@dataclass(frozen=True)
class EdgeSet:
    """
    Sous-ensemble d'arêtes d'un graphe donné (masque de bits).

    Parameters
    ----------
    mask       : bit i à 1 ⇔ l'arête i appartient au sous-graphe
    edge_count : nombre d'arêtes E du graphe propriétaire
    """

    mask: int
    edge_count: int

    def __post_init__(self):
        assert self.mask >= 0 and self.mask >> self.edge_count == 0, \
            "masque hors des arêtes du graphe"

    @classmethod
    def from_indices(cls, indices: Iterable[int], edge_count: int) -> "EdgeSet":
        mask = 0
        for i in indices:
            if not 0 <= i < edge_count:
                raise IndexError(f"arête {i} hors de [0, {edge_count})")
            mask |= 1 << i
        return cls(mask, edge_count)

    @property
    def size(self) -> int:
        """k = |g|."""
        return self.mask.bit_count()

    def indices(self) -> Tuple[int, ...]:
        return tuple(i for i in range(self.edge_count) if self.mask >> i & 1)

    def issubset(self, other: "EdgeSet") -> bool:
        return self.mask & ~other.mask == 0

    def union(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet(self.mask | other.mask, self.edge_count)

    def sort_key(self) -> Tuple[int, int]:
        """Ordre canonique : taille, puis valeur du masque."""
        return (self.size, self.mask)

    def __contains__(self, edge: int) -> bool:
        return bool(self.mask >> edge & 1)

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(self.indices())


class ComponentRecord(NamedTuple):
    """Résumé d'une composante connexe, suffisant pour toutes les règles."""
    size: int
    has_source: bool
    has_target: bool
    has_terminal: bool


# ------------------------------------------------------------------ #
#  Graphe                                                             #
# ------------------------------------------------------------------ #

class ReliabilityGraph:
    """
    Multigraphe non orienté, immuable après construction.

    Parameters
    ----------
    vertex_count  : V ≥ 1
    edges         : liste ordonnée de paires (a, b), a ≠ b, sommets dans [0, V)
    vertex_labels : dict étiquette → identifiant (optionnel)
    """

    def __init__(self, vertex_count: int,
                 edges: Sequence[Tuple[int, int]],
                 vertex_labels: Optional[Dict[str, int]] = None):
        if vertex_count < 1:
            raise GraphParseError("un graphe doit avoir au moins un sommet")

        checked = []
        for i, (a, b) in enumerate(edges):
            if not (0 <= a < vertex_count and 0 <= b < vertex_count):
                raise GraphParseError(f"arête {i} : sommet hors de [0, {vertex_count})")
            if a == b:
                raise SelfLoopError(f"arête {i} : boucle sur le sommet {a}")
            checked.append((int(a), int(b)))

        self.vertex_count = vertex_count
        self.edges: Tuple[Tuple[int, int], ...] = tuple(checked)
        self.vertex_labels: Dict[str, int] = dict(vertex_labels or {})
        self._labels_by_id = {v: label for label, v in self.vertex_labels.items()}

        self._graph = nx.MultiGraph()
        self._graph.add_nodes_from(range(vertex_count))
        for i, (a, b) in enumerate(self.edges):
            self._graph.add_edge(a, b, key=i)

    @classmethod
    def from_edges(cls, edges: Sequence[Tuple[int, int]],
                   vertex_count: Optional[int] = None) -> "ReliabilityGraph":
        """Construit un graphe à partir d'identifiants entiers."""
        if vertex_count is None:
            vertex_count = 1 + max((max(a, b) for a, b in edges), default=0)
        return cls(vertex_count, edges)

    # ------------------------------------------------------------------ #
    #  Informations de base                                                #
    # ------------------------------------------------------------------ #

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def nx_graph(self) -> nx.MultiGraph:
        """Vue networkx (clé d'arête = indice). Ne pas modifier."""
        return self._graph

    def label(self, vertex: int) -> str:
        """Étiquette d'un sommet (son identifiant s'il n'en a pas)."""
        return self._labels_by_id.get(vertex, str(vertex))

    def edge_label(self, edge: int) -> str:
        """Nom lisible d'une arête, ex. 'S-1'."""
        a, b = self.edges[edge]
        return f"{self.label(a)}-{self.label(b)}"

    def vertex_id(self, ref) -> int:
        """Résout une référence de sommet : étiquette d'abord, puis entier."""
        if isinstance(ref, int):
            vertex = ref
        elif str(ref) in self.vertex_labels:
            return self.vertex_labels[str(ref)]
        else:
            try:
                vertex = int(ref)
            except ValueError:
                raise KeyError(f"sommet inconnu : {ref!r}")
        if not 0 <= vertex < self.vertex_count:
            raise KeyError(f"sommet hors de [0, {self.vertex_count}) : {ref!r}")
        return vertex

    def full(self) -> EdgeSet:
        return EdgeSet((1 << self.edge_count) - 1, self.edge_count)

    def empty(self) -> EdgeSet:
        return EdgeSet(0, self.edge_count)

    def edge_set(self, indices: Iterable[int]) -> EdgeSet:
        return EdgeSet.from_indices(indices, self.edge_count)

    def check_exact_capacity(self, cap: int = EXACT_EDGE_CAP):
        if self.edge_count > cap:
            raise CapacityError(
                f"E = {self.edge_count} > {cap} : calcul exact impossible, "
                f"utiliser l'estimation Monte Carlo")

    # ------------------------------------------------------------------ #
    #  Connexité                                                           #
    # ------------------------------------------------------------------ #

    def _union_find(self, active_mask: int) -> UnionFind:
        uf = UnionFind(range(self.vertex_count))
        i = 0
        while active_mask:
            if active_mask & 1:
                a, b = self.edges[i]
                uf.union(a, b)
            active_mask >>= 1
            i += 1
        return uf

    def components(self, active: EdgeSet) -> List[frozenset]:
        """
        Composantes connexes du sous-graphe des arêtes actives, sur les V
        sommets (un sommet isolé forme un singleton). Triées par plus petit
        sommet.
        """
        assert active.edge_count == self.edge_count, "EdgeSet d'un autre graphe"
        groups = self._union_find(active.mask).to_sets()
        return sorted((frozenset(c) for c in groups), key=min)

    def component_summary(self, active_mask: int,
                          source: Optional[int] = None,
                          target: Optional[int] = None,
                          terminals: frozenset = frozenset()) -> List[ComponentRecord]:
        """Résumé (taille, S, T, terminal) de chaque composante."""
        uf = self._union_find(active_mask)
        records = []
        for comp in uf.to_sets():
            records.append(ComponentRecord(
                size=len(comp),
                has_source=source in comp,
                has_target=target in comp,
                has_terminal=not terminals.isdisjoint(comp),
            ))
        return records

    def is_connected(self) -> bool:
        return nx.is_connected(self._graph)

    def is_connected_mask(self, active_mask: int) -> bool:
        """Vrai si les arêtes du masque relient les V sommets."""
        return sum(1 for _ in self._union_find(active_mask).to_sets()) == 1

    # ------------------------------------------------------------------ #
    #  Transformations                                                     #
    # ------------------------------------------------------------------ #

    def delete_edges(self, removed: Iterable[int]) -> Tuple["ReliabilityGraph", Dict[int, int]]:
        """
        Copie du graphe sans les arêtes données (mêmes sommets).
        Retourne (graphe, correspondance ancien indice → nouvel indice).
        """
        removed = set(removed)
        for e in removed:
            if not 0 <= e < self.edge_count:
                raise IndexError(f"arête {e} hors de [0, {self.edge_count})")
        kept = [i for i in range(self.edge_count) if i not in removed]
        index_map = {old: new for new, old in enumerate(kept)}
        graph = ReliabilityGraph(self.vertex_count,
                                 [self.edges[i] for i in kept],
                                 self.vertex_labels)
        return graph, index_map

    def to_edge_list(self) -> str:
        """Sérialise au format liste d'arêtes (étiquettes si présentes)."""
        lines = [f"{self.label(a)} {self.label(b)}" for a, b in self.edges]
        return "\n".join(lines) + "\n"

    # ------------------------------------------------------------------ #
    #  Affichage                                                           #
    # ------------------------------------------------------------------ #

    def __repr__(self) -> str:
        return f"ReliabilityGraph(V={self.vertex_count}, E={self.edge_count})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ReliabilityGraph):
            return NotImplemented
        return (self.vertex_count == other.vertex_count
                and self.edges == other.edges
                and self.vertex_labels == other.vertex_labels)

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.edges))
