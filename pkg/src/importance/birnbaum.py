"""
birnbaum.py — Importance des arêtes : I_e(x) = R(x) − R_(G−e)(x).

Les deux polynômes vivent sur E et E − 1 arêtes ; la différence est prise
point par point. Les comparaisons (classement, égalités, signes) sont faites
en arithmétique exacte, donc les classes de symétrie sont des égalités strictes.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..graph.multigraph import EdgeSet, ReliabilityGraph
from ..incexc.unions import FULL_MOTIF_CAP, exact_nk
from ..poly.coefficients import CoefficientVector, evaluate, parse_x
from ..poly.roots import SignChange, sign_changes
from ..rules.rule_spec import RuleSpec

DEFAULT_TOL = 1e-9
SCAN_POINTS = 1024


def _exact_x(x) -> Fraction:
    x = parse_x(x)
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class EdgeImportance:
    """R du graphe complet et R sans l'arête `edge`."""

    edge: int
    full: CoefficientVector
    without: CoefficientVector

    def exact(self, x) -> Fraction:
        x = _exact_x(x)
        return evaluate(self.full, x) - evaluate(self.without, x)

    def value(self, x) -> float:
        return float(self.exact(x))


# ------------------------------------------------------------------ #
#  Calcul des importances                                             #
# ------------------------------------------------------------------ #

def _polynomial(graph: ReliabilityGraph, rule: RuleSpec, cap: int) -> CoefficientVector:
    return exact_nk(graph, rule, cap=cap).nk


def _without(graph: ReliabilityGraph, rule: RuleSpec, edge: int, cap: int) -> CoefficientVector:
    reduced, _ = graph.delete_edges([edge])
    return _polynomial(reduced, rule, cap)


def edge_importance(graph: ReliabilityGraph, rule: RuleSpec, edge: int,
                    cap: int = FULL_MOTIF_CAP,
                    full: Optional[CoefficientVector] = None) -> EdgeImportance:
    """
    Parameters
    ----------
    edge : indice de l'arête supprimée
    full : polynôme du graphe complet, s'il est déjà connu
    """
    if not 0 <= edge < graph.edge_count:
        raise IndexError(f"arête {edge} hors de [0, {graph.edge_count})")
    if full is None:
        full = _polynomial(graph, rule, cap)
    return EdgeImportance(edge, full, _without(graph, rule, edge, cap))


def all_importances(graph: ReliabilityGraph, rule: RuleSpec,
                    edges: Optional[Sequence[int]] = None, threads: int = 1,
                    cap: int = FULL_MOTIF_CAP) -> List[EdgeImportance]:
    """Importances de plusieurs arêtes, dans l'ordre des indices demandés."""
    edges = list(range(graph.edge_count)) if edges is None else list(edges)
    full = _polynomial(graph, rule, cap)
    work = lambda e: edge_importance(graph, rule, e, cap=cap, full=full)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(work, edges))
    return [work(e) for e in edges]


def _group_ties(scored: List[Tuple[int, Fraction]]) -> List[List[int]]:
    groups: List[List[int]] = []
    last = None
    for edge, score in sorted(scored, key=lambda item: (-item[1], item[0])):
        if groups and score == last:
            groups[-1].append(edge)
        else:
            groups.append([edge])
        last = score
    return groups


def rank_edges(graph: ReliabilityGraph, rule: RuleSpec, x, threads: int = 1,
               cap: int = FULL_MOTIF_CAP,
               importances: Optional[List[EdgeImportance]] = None) -> List[List[int]]:
    """Arêtes par importance décroissante en x ; les ex-aequo sont groupés."""
    x = _exact_x(x)
    importances = importances or all_importances(graph, rule, threads=threads, cap=cap)
    return _group_ties([(imp.edge, imp.exact(x)) for imp in importances])


def find_crossings(graph: ReliabilityGraph, rule: RuleSpec, edge_a: int, edge_b: int,
                   tol: float = DEFAULT_TOL, scan_points: int = SCAN_POINTS,
                   cap: int = FULL_MOTIF_CAP) -> List[SignChange]:
    """x où I_a − I_b = R_(G−b) − R_(G−a) change de signe dans (0, 1)."""
    without_a = _without(graph, rule, edge_a, cap)
    without_b = _without(graph, rule, edge_b, cap)
    return sign_changes(lambda x: evaluate(without_b, x) - evaluate(without_a, x),
                        scan_points=scan_points, tol=tol)


# ------------------------------------------------------------------ #
#  Rapport complet                                                    #
# ------------------------------------------------------------------ #

@dataclass
class ImportanceReport:
    per_edge: Dict[int, EdgeImportance]
    ranking_at: Dict[float, List[List[int]]] = field(default_factory=dict)
    classes: List[List[int]] = field(default_factory=list)
    crossings: List[Tuple[int, int, float, float]] = field(default_factory=list)
    values: Dict[int, List[float]] = field(default_factory=dict)
    nonnegative: bool = True

    def to_dict(self, graph: Optional[ReliabilityGraph] = None) -> dict:
        name = graph.edge_label if graph is not None else str
        return {
            'per_edge': {str(e): {'label': name(e),
                                  'without_nk': imp.without.to_dict(),
                                  'without_polynomial': imp.without.pretty()}
                         for e, imp in self.per_edge.items()},
            'ranking_at': {str(x): groups for x, groups in self.ranking_at.items()},
            'classes': self.classes,
            'crossings': [{'edge_a': a, 'edge_b': b, 'x_star': x, 'bracket_width': w}
                          for a, b, x, w in self.crossings],
            'nonnegative': self.nonnegative,
        }


def importance_table(graph: ReliabilityGraph, rule: RuleSpec, xs: Sequence,
                     threads: int = 1, cap: int = FULL_MOTIF_CAP,
                     with_crossings: bool = True, tol: float = DEFAULT_TOL,
                     scan_points: int = SCAN_POINTS, verbose: bool = False) -> ImportanceReport:
    """
    Importance de chaque arête en chaque x, classes de symétrie (polynômes
    identiques), classements, et croisements entre représentants de classes.
    """
    importances = all_importances(graph, rule, threads=threads, cap=cap)
    report = ImportanceReport(per_edge={imp.edge: imp for imp in importances})

    by_poly: Dict[Tuple, List[int]] = {}
    for imp in importances:
        by_poly.setdefault(imp.without.coefficients, []).append(imp.edge)
    report.classes = sorted(by_poly.values())

    for x in xs:
        exact = _exact_x(x)
        report.ranking_at[float(exact)] = _group_ties(
            [(imp.edge, imp.exact(exact)) for imp in importances])

    check_points = [Fraction(i, 100) for i in range(101)]
    for imp in importances:
        report.values[imp.edge] = [imp.value(x) for x in xs]
        if any(imp.exact(x) < 0 for x in check_points):
            report.nonnegative = False

    if with_crossings:
        reps = [cls[0] for cls in report.classes]
        for i, a in enumerate(reps):
            for b in reps[i + 1:]:
                wa, wb = report.per_edge[a].without, report.per_edge[b].without
                for root in sign_changes(lambda x: evaluate(wb, x) - evaluate(wa, x),
                                         scan_points=scan_points, tol=tol):
                    report.crossings.append((a, b, root.x_star, root.width))

    if verbose:
        print(f"[Importance] {len(report.classes)} classes, "
              f"{len(report.crossings)} croisement(s)")
    return report


# ------------------------------------------------------------------ #
#  Suppression d'arêtes                                               #
# ------------------------------------------------------------------ #

@dataclass
class RemovalExperiment:
    curves: Dict[str, List[Tuple[float, float]]]
    removed: Tuple[int, ...]
    drop_a: float
    drop_b: float
    b_dominates_before: bool

    @property
    def larger_drop(self) -> str:
        return 'a' if self.drop_a >= self.drop_b else 'b'

    def to_dict(self) -> dict:
        return {
            'removed': list(self.removed),
            'mean_drop_a': self.drop_a,
            'mean_drop_b': self.drop_b,
            'larger_drop': self.larger_drop,
            'b_dominates_before': self.b_dominates_before,
        }


def edge_removal_experiment(graph: ReliabilityGraph, rule_a: RuleSpec, rule_b: RuleSpec,
                            removed: EdgeSet, grid_points: int = 201,
                            cap: int = FULL_MOTIF_CAP,
                            verbose: bool = False) -> RemovalExperiment:
    """
    Courbes R avant/après suppression des arêtes `removed`, sous deux règles.
    Les baisses moyennes sur la grille sont rapportées, pas imposées.
    """
    from ..estimate.curves import grid

    reduced, _ = graph.delete_edges(removed.indices())
    xs = grid(grid_points)
    polys = {
        'before_a': _polynomial(graph, rule_a, cap),
        'after_a': _polynomial(reduced, rule_a, cap),
        'before_b': _polynomial(graph, rule_b, cap),
        'after_b': _polynomial(reduced, rule_b, cap),
    }
    exact = {name: [evaluate(p, x) for x in xs] for name, p in polys.items()}
    curves = {name: [(float(x), float(y)) for x, y in zip(xs, values)]
              for name, values in exact.items()}

    n = len(xs)
    drop_a = float(sum(b - a for b, a in zip(exact['before_a'], exact['after_a'])) / n)
    drop_b = float(sum(b - a for b, a in zip(exact['before_b'], exact['after_b'])) / n)
    dominates = all(b >= a for a, b in zip(exact['before_a'], exact['before_b']))

    if verbose:
        print(f"[Importance] suppression de {len(removed)} arête(s) : "
              f"baisse moyenne a={drop_a:.4f}, b={drop_b:.4f}")
    return RemovalExperiment(curves, removed.indices(), drop_a, drop_b, dominates)
