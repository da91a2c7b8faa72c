"""
tradeoff.py — Beaucoup de motifs qui se recouvrent contre peu de motifs disjoints.

Réseau 1 : r1 motifs de taille k1, différant deux à deux de deux arêtes.
Réseau 2 : r2 = (2·r1 + k1 − 2) / k2 motifs disjoints de taille k2
           (même budget d'arêtes).

Trois écritures de R_1 sont comparées :
  - 'as_stated'   Σ (−1)^(i+1) C(r1, i) x^(k1 + r1·(i−1))
  - 'chain'       x^(k1−1) [1 − (1 − x)^r1]   (recouvrement de tout sauf une arête)
  - 'shared_core' x^(k1−2) [1 − (1 − x²)^r1]  (cœur de k1 − 2 arêtes, 2 arêtes propres
                                                par motif ; utilise 2·r1 + k1 − 2 arêtes)
La première peut sortir de [0, 1] : on le signale sans le corriger.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional

from ..errors import ParameterError
from ..poly.coefficients import CoefficientVector, evaluate
from ..poly.closed_forms import closed_form_disjoint
from ..poly.roots import SignChange, sign_changes


def _nk(values: Dict[int, int]) -> CoefficientVector:
    clean = {k: v for k, v in values.items() if v}
    return CoefficientVector.from_mapping('Nk', max(clean, default=0), clean)


def overlapping_as_stated(r1: int, k1: int) -> CoefficientVector:
    values: Dict[int, int] = {}
    for i in range(1, r1 + 1):
        k = k1 + r1 * (i - 1)
        values[k] = values.get(k, 0) + (-1) ** (i + 1) * comb(r1, i)
    return _nk(values)


def overlapping_chain(r1: int, k1: int) -> CoefficientVector:
    return _nk({k1 - 1 + l: (-1) ** (l + 1) * comb(r1, l) for l in range(1, r1 + 1)})


def overlapping_shared_core(r1: int, k1: int) -> CoefficientVector:
    return _nk({k1 - 2 + 2 * l: (-1) ** (l + 1) * comb(r1, l) for l in range(1, r1 + 1)})


@dataclass
class TradeoffReport:
    r1: int
    k1: int
    k2: int
    edge_budget: int
    r2_formula: Fraction
    r2: int
    overlapping: Dict[str, CoefficientVector]
    disjoint: CoefficientVector
    within_unit_interval: Dict[str, bool] = field(default_factory=dict)
    crossings: Dict[str, List[SignChange]] = field(default_factory=dict)
    curve: List[dict] = field(default_factory=list)

    def disjoint_better_at_small_x(self, variant: str = 'shared_core') -> bool:
        """Vrai si R_2 > R_1 juste après 0 (premier point non nul de la grille)."""
        for row in self.curve[1:]:
            diff = row[f'R1_{variant}'] - row['R2']
            if diff:
                return diff < 0
        return False

    def to_dict(self) -> dict:
        return {
            'r1': self.r1, 'k1': self.k1, 'k2': self.k2,
            'edge_budget': self.edge_budget,
            'r2_formula': str(self.r2_formula),
            'r2': self.r2,
            'overlapping': {name: v.pretty() for name, v in self.overlapping.items()},
            'disjoint': self.disjoint.pretty(),
            'within_unit_interval': self.within_unit_interval,
            'crossings': {name: [c.x_star for c in found]
                          for name, found in self.crossings.items()},
        }


def tradeoff_compare(r1: int, k1: int, k2: int, r2: Optional[int] = None,
                     grid_points: int = 201, scan_points: int = 1024,
                     tol: float = 1e-9) -> TradeoffReport:
    """
    Compare R_1 (trois écritures) à R_2 sur [0, 1].

    Parameters
    ----------
    r2 : nombre de motifs disjoints imposé ; sans lui, (2·r1 + k1 − 2) / k2
         doit être entier
    """
    if r1 < 1 or k1 < 2 or k2 < 1:
        raise ParameterError("il faut r1 ≥ 1, k1 ≥ 2 et k2 ≥ 1")
    budget = 2 * r1 + k1 - 2
    r2_formula = Fraction(budget, k2)
    if r2 is None:
        if r2_formula.denominator != 1:
            raise ParameterError(f"k2 = {k2} ne divise pas 2·r1 + k1 − 2 = {budget} "
                                 f"(r2 = {r2_formula}) : préciser r2")
        r2 = int(r2_formula)
    if r2 < 1:
        raise ParameterError("r2 doit être ≥ 1")

    overlapping = {
        'as_stated': overlapping_as_stated(r1, k1),
        'chain': overlapping_chain(r1, k1),
        'shared_core': overlapping_shared_core(r1, k1),
    }
    disjoint = closed_form_disjoint(r2, k2, r2 * k2)
    report = TradeoffReport(r1, k1, k2, budget, r2_formula, r2, overlapping, disjoint)

    xs = [Fraction(i, grid_points - 1) for i in range(grid_points)]
    r2_values = [evaluate(disjoint, x) for x in xs]
    columns = {name: [evaluate(v, x) for x in xs] for name, v in overlapping.items()}
    for name, values in columns.items():
        report.within_unit_interval[name] = all(0 <= y <= 1 for y in values)
        report.crossings[name] = sign_changes(
            lambda x, v=overlapping[name]: evaluate(v, x) - evaluate(disjoint, x),
            scan_points=scan_points, tol=tol)
    report.within_unit_interval['disjoint'] = all(0 <= y <= 1 for y in r2_values)

    for i, x in enumerate(xs):
        row = {'x': float(x), 'R2': float(r2_values[i])}
        for name, values in columns.items():
            row[f'R1_{name}'] = float(values[i])
        report.curve.append(row)
    return report
