"""
unions.py — Inclusion–exclusion sur les unions de motifs.

N_k^(l) compte les combinaisons de l motifs dont l'union a k arêtes ;
N_k = Σ_l (−1)^(l+1) N_k^(l) donne R(x) = Σ N_k x^k.

Deux parcours de l'arbre des sous-ensembles de motifs :
  - complet   : tous les 2^f − 1 sous-ensembles non vides (f ≤ 20)
  - tronqué   : seuls les motifs de taille ≤ K_max, et une branche est
                abandonnée dès que l'union dépasse K_max (la taille d'une
                union ne peut que croître)

Chaque sous-ensemble est visité une fois : un nœud n'est étendu que par
des motifs d'indice supérieur au dernier ajouté. Le parcours est réparti
par strate de premier motif ; les tables partielles s'additionnent.
"""

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence

from tqdm import tqdm

from ..errors import CapacityError, ParameterError
from ..graph.multigraph import ReliabilityGraph
from ..motifs.enumerators import enumerate_motifs
from ..motifs.family import MotifFamily
from ..poly.coefficients import CoefficientVector, NklTable
from ..rules.rule_spec import RuleSpec

FULL_MOTIF_CAP = 20


# ------------------------------------------------------------------ #
#  Plan d'énumération                                                 #
# ------------------------------------------------------------------ #

@dataclass(frozen=True)
class UnionEnumerationPlan:
    """
    Parameters
    ----------
    mode  : 'full' ou 'truncated'
    k_max : taille d'union maximale (mode tronqué)
    l_max : nombre maximal de motifs par union (optionnel)
    """

    mode: str = 'full'
    k_max: Optional[int] = None
    l_max: Optional[int] = None

    def __post_init__(self):
        if self.mode not in ('full', 'truncated'):
            raise ParameterError(f"mode inconnu : {self.mode!r}")
        if self.mode == 'truncated' and self.k_max is None:
            raise ParameterError("le mode tronqué demande k_max")
        if self.l_max is not None and self.l_max < 1:
            raise ParameterError("l_max doit être ≥ 1")

    def validate_for(self, family: MotifFamily):
        if self.mode == 'truncated' and family.motifs and self.k_max < family.motifs[0].size:
            raise ParameterError(f"k_max = {self.k_max} < taille minimale des motifs "
                                 f"({family.motifs[0].size})")

    def run(self, family: MotifFamily, threads: int = 1, cap: int = FULL_MOTIF_CAP,
            verbose: bool = False) -> NklTable:
        self.validate_for(family)
        if self.mode == 'full':
            return nkl_full(family, threads=threads, cap=cap, l_max=self.l_max, verbose=verbose)
        return nkl_truncated(family, self.k_max, threads=threads, l_max=self.l_max,
                             verbose=verbose)


# ------------------------------------------------------------------ #
#  Parcours                                                           #
# ------------------------------------------------------------------ #

def _walk_stratum(masks: Sequence[int], first: int, k_max: Optional[int],
                  l_max: Optional[int]) -> Counter:
    """Tous les sous-ensembles dont le plus petit indice est `first`."""
    counts: Counter = Counter()
    n = len(masks)
    stack = [(first, masks[first], 1)]
    while stack:
        last, union, l = stack.pop()
        counts[(l, union.bit_count())] += 1
        if l_max is not None and l >= l_max:
            continue
        for j in range(last + 1, n):
            merged = union | masks[j]
            if k_max is not None and merged.bit_count() > k_max:
                continue
            stack.append((j, merged, l + 1))
    return counts


def _walk(masks: Sequence[int], k_max: Optional[int], l_max: Optional[int],
          threads: int, verbose: bool, desc: str) -> Counter:
    total: Counter = Counter()
    strata = range(len(masks))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = pool.map(lambda i: _walk_stratum(masks, i, k_max, l_max), strata)
            for part in tqdm(parts, total=len(masks), desc=desc, disable=not verbose):
                total.update(part)
    else:
        for i in tqdm(strata, desc=desc, disable=not verbose):
            total.update(_walk_stratum(masks, i, k_max, l_max))
    return total


def nkl_full(family: MotifFamily, threads: int = 1, cap: int = FULL_MOTIF_CAP,
             l_max: Optional[int] = None, verbose: bool = False) -> NklTable:
    """Table N_k^(l) exacte sur tous les sous-ensembles de motifs."""
    f = family.motif_count
    if f > cap:
        raise CapacityError(f"f = {f} motifs > {cap} : 2^f unions hors de portée, "
                            f"utiliser le mode tronqué (--k-max)")
    counts = _walk(family.masks(), None, l_max, threads, verbose, "[IncExc] unions")
    if verbose:
        print(f"[IncExc] {sum(counts.values())} unions de {f} motifs")
    return NklTable(family.edge_count, f, dict(counts))


def nkl_truncated(family: MotifFamily, k_max: int, threads: int = 1,
                  l_max: Optional[int] = None, verbose: bool = False) -> NklTable:
    """Table N_k^(l) exacte pour k ≤ k_max."""
    masks = [m for m in family.masks() if m.bit_count() <= k_max]
    counts = _walk(masks, k_max, l_max, threads, verbose, f"[IncExc] unions ≤ {k_max}")
    if verbose:
        print(f"[IncExc] {sum(counts.values())} unions de taille ≤ {k_max} "
              f"({len(masks)}/{family.motif_count} motifs utiles)")
    return NklTable(family.edge_count, family.motif_count, dict(counts), truncation=k_max)


def nk_from_table(table: NklTable) -> CoefficientVector:
    """N_k = Σ_l (−1)^(l+1) N_k^(l)."""
    values: Counter = Counter()
    for (l, k), count in table.entries.items():
        values[k] += count if l % 2 else -count
    return CoefficientVector.from_mapping('Nk', table.edge_count, dict(values),
                                          table.truncation)


# ------------------------------------------------------------------ #
#  Moteur exact automatique                                           #
# ------------------------------------------------------------------ #

class ExactResult(NamedTuple):
    nk: CoefficientVector
    engine: str
    family: Optional[MotifFamily]
    table: Optional[NklTable]


def exact_nk(graph: ReliabilityGraph, rule: RuleSpec, threads: int = 1,
             cap: int = FULL_MOTIF_CAP, verbose: bool = False) -> ExactResult:
    """
    Polynôme exact en base Nk : motifs + inclusion–exclusion complète si
    f ≤ cap, sinon factorisation par arêtes.
    """
    from ..estimate.factoring import factoring_nk
    from ..graph.kirchhoff import spanning_tree_count

    graph.check_exact_capacity()
    family = None
    too_many_trees = rule.kind == 'all_terminal' and spanning_tree_count(graph) > cap
    if not too_many_trees:
        try:
            family = enumerate_motifs(graph, rule, verbose=verbose)
        except CapacityError:
            family = None

    if family is not None and family.motif_count <= cap:
        table = nkl_full(family, threads=threads, cap=cap, verbose=verbose)
        return ExactResult(nk_from_table(table), 'inclusion_exclusion', family, table)

    if verbose:
        print(f"[IncExc] trop de motifs pour {rule.label(graph)} : factorisation par arêtes")
    return ExactResult(factoring_nk(graph, rule, verbose=verbose), 'factoring', family, None)
