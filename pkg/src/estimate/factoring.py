"""
factoring.py — Polynôme exact par factorisation sur les arêtes.

    R(G) = x · R(G / e) + (1 − x) · R(G − e)

L'état est le multigraphe contracté : les arêtes restantes entre classes
de sommets, et le résumé (taille, S, T, terminal) de chaque classe. Les états
sont mis en cache sous une forme canonique (classes renumérotées par ordre
d'apparition), comme une table de transpositions.

Coupures :
  - la règle accepte déjà sans aucune arête restante → R = 1
  - la règle refuse même avec toutes les arêtes restantes → R = 0
Une arête dont les deux extrémités sont dans la même classe est ignorée.

Les arêtes sont traitées dans l'ordre d'un parcours en largeur (rang maximal
de leurs extrémités), ce qui garde une frontière étroite sur les grilles.
"""

from typing import Dict, List, Optional, Tuple

import networkx as nx
from networkx.utils import UnionFind

from ..graph.multigraph import ComponentRecord, ReliabilityGraph
from ..poly.coefficients import CoefficientVector
from ..rules.rule_spec import RuleSpec

Poly = Tuple[int, ...]
State = Tuple[Tuple[Tuple[int, int], ...], Tuple[ComponentRecord, ...], Tuple[ComponentRecord, ...]]

ONE: Poly = (1,)
ZERO: Poly = (0,)


def _merge(a: ComponentRecord, b: ComponentRecord) -> ComponentRecord:
    return ComponentRecord(a.size + b.size,
                           a.has_source or b.has_source,
                           a.has_target or b.has_target,
                           a.has_terminal or b.has_terminal)


def _poly_mix(contracted: Poly, deleted: Poly) -> Poly:
    """x · Pc + (1 − x) · Pd = Pd + x (Pc − Pd)."""
    n = max(len(contracted), len(deleted)) + 1
    out = [0] * n
    for i, c in enumerate(deleted):
        out[i] += c
        out[i + 1] -= c
    for i, c in enumerate(contracted):
        out[i + 1] += c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def edge_order(graph: ReliabilityGraph, rule: RuleSpec) -> List[int]:
    """Indices d'arêtes triés par rang BFS de leur extrémité la plus tardive."""
    root = rule.source if rule.source is not None else 0
    rank: Dict[int, int] = {root: 0}
    for _, v in nx.bfs_edges(graph.nx_graph, root):
        rank[v] = len(rank)
    for v in range(graph.vertex_count):
        rank.setdefault(v, len(rank))

    def key(e):
        a, b = graph.edges[e]
        return (max(rank[a], rank[b]), min(rank[a], rank[b]), e)

    return sorted(range(graph.edge_count), key=key)


class EdgeFactoring:
    """
    Moteur de factorisation pour une règle cohérente.

    Parameters
    ----------
    graph : graphe (E ≤ 128)
    rule  : règle intégrée
    """

    def __init__(self, graph: ReliabilityGraph, rule: RuleSpec, verbose: bool = False):
        rule.validate_for(graph)
        graph.check_exact_capacity()
        self.graph = graph
        self.rule = rule
        self.verbose = verbose
        self.states_visited = 0
        self._cache: Dict[State, Poly] = {}
        self._keep_finished = rule.kind == 'ear_alpha'

    # ------------------------------------------------------------------ #
    #  Interface publique                                                  #
    # ------------------------------------------------------------------ #

    def solve(self) -> CoefficientVector:
        g, rule = self.graph, self.rule
        records = {v: ComponentRecord(1, v == rule.source, v == rule.target,
                                      v in rule.terminals)
                   for v in range(g.vertex_count)}
        edges = [g.edges[e] for e in edge_order(g, rule)]

        self._cache.clear()
        self.states_visited = 0
        poly = self._solve(*self._normalize(edges, records, ()))

        E = g.edge_count
        coeffs = list(poly) + [0] * (E + 1 - len(poly))
        if self.verbose:
            print(f"[Factoring] {rule.label(g)} : {self.states_visited} états, "
                  f"{len(self._cache)} en cache")
        return CoefficientVector('Nk', E, tuple(coeffs))

    # ------------------------------------------------------------------ #
    #  Récursion                                                           #
    # ------------------------------------------------------------------ #

    def _normalize(self, edges, records: Dict[int, ComponentRecord],
                   finished: Tuple[ComponentRecord, ...]) -> State:
        """Retire les boucles, renumérote les classes, range les classes isolées."""
        relabel: Dict[int, int] = {}
        out_edges = []
        for a, b in edges:
            if a == b:
                continue
            for c in (a, b):
                if c not in relabel:
                    relabel[c] = len(relabel)
            out_edges.append((relabel[a], relabel[b]))

        active = [None] * len(relabel)
        for old, new in relabel.items():
            active[new] = records[old]
        done = list(finished)
        for old, rec in records.items():
            if old not in relabel:
                done.append(rec)
        if not self._keep_finished:
            done = [r for r in done if self._matters(r)]
        return tuple(out_edges), tuple(active), tuple(sorted(done))

    def _matters(self, rec: ComponentRecord) -> bool:
        """Faux si la classe terminée est sans effet sur toute décision future."""
        kind = self.rule.kind
        if kind == 'two_terminal':
            return rec.has_source or rec.has_target
        if kind == 'k_terminal':
            return not rec.has_terminal
        if kind == 'ar_alpha':
            return rec.size >= self.rule.threshold(self.graph.vertex_count)
        return True

    def _decide(self, edges, active, finished) -> Optional[Poly]:
        V = self.graph.vertex_count
        if self.rule.accepts_summary(V, list(active) + list(finished)):
            return ONE

        uf = UnionFind(range(len(active)))
        for a, b in edges:
            uf.union(a, b)
        merged = []
        for group in uf.to_sets():
            rec = None
            for c in group:
                rec = active[c] if rec is None else _merge(rec, active[c])
            merged.append(rec)
        if not self.rule.accepts_summary(V, merged + list(finished)):
            return ZERO
        return None

    def _solve(self, edges, active, finished) -> Poly:
        key = (edges, active, finished)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        self.states_visited += 1

        result = self._decide(edges, active, finished)
        if result is None:
            (a, b), rest = edges[0], edges[1:]
            records = dict(enumerate(active))

            deleted = self._solve(*self._normalize(rest, records, finished))

            contracted_records = dict(records)
            contracted_records[a] = _merge(records[a], records[b])
            del contracted_records[b]
            renamed = [(a if u == b else u, a if v == b else v) for u, v in rest]
            contracted = self._solve(*self._normalize(renamed, contracted_records, finished))

            result = _poly_mix(contracted, deleted)

        self._cache[key] = result
        return result


def factoring_nk(graph: ReliabilityGraph, rule: RuleSpec,
                 verbose: bool = False) -> CoefficientVector:
    """R(x) = Σ N_k x^k exact, sans énumérer les motifs."""
    return EdgeFactoring(graph, rule, verbose=verbose).solve()
