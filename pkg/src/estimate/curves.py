"""
curves.py — Courbes R(x) sur une grille régulière de [0, 1].

Source exacte (CoefficientVector) : évaluation rationnelle sur la grille.
Source Monte Carlo (McEstimate) : R(x) = Σ C(E, k) p̂_k x^k (1 − x)^(E−k),
poids binomiaux en log au-delà de `log_space_above` arêtes.
"""

import math
from fractions import Fraction
from typing import Dict, List, Tuple, Union

from ..errors import ParameterError
from ..poly.coefficients import CoefficientVector, evaluate
from .monte_carlo import McEstimate, write_rows

LOG_SPACE_ABOVE = 60


def grid(grid_points: int) -> List[Fraction]:
    if grid_points < 2:
        raise ParameterError("grid_points doit être ≥ 2")
    return [Fraction(i, grid_points - 1) for i in range(grid_points)]


def _mc_value(mc: McEstimate, x: float, log_space: bool) -> float:
    E = mc.edge_count
    if x == 0.0:
        return mc.p_hat[0]
    if x == 1.0:
        return mc.p_hat[E]
    if not log_space:
        return math.fsum(math.comb(E, k) * p * x ** k * (1 - x) ** (E - k)
                         for k, p in enumerate(mc.p_hat) if p)
    lx, ly = math.log(x), math.log1p(-x)
    lg = math.lgamma(E + 1)
    return math.fsum(
        p * math.exp(lg - math.lgamma(k + 1) - math.lgamma(E - k + 1) + k * lx + (E - k) * ly)
        for k, p in enumerate(mc.p_hat) if p)


def reliability_curve(source: Union[CoefficientVector, McEstimate], grid_points: int = 201,
                      log_space_above: int = LOG_SPACE_ABOVE) -> List[Tuple[float, float]]:
    """Liste de (x, R(x)) sur grid_points points de [0, 1]."""
    xs = grid(grid_points)
    if isinstance(source, CoefficientVector):
        return [(float(x), float(evaluate(source, x))) for x in xs]
    log_space = source.edge_count > log_space_above
    return [(float(x), _mc_value(source, float(x), log_space)) for x in xs]


def write_curve_csv(curve: List[Tuple[float, float]], path):
    write_rows([{'x': x, 'R': r} for x, r in curve], path, ['x', 'R'])


def write_curves_csv(curves: Dict[str, List[Tuple[float, float]]], path):
    """Plusieurs courbes sur la même grille : une colonne par courbe."""
    names = list(curves)
    rows = []
    for i, (x, _) in enumerate(curves[names[0]]):
        row = {'x': x}
        for name in names:
            row[name] = curves[name][i][1]
        rows.append(row)
    write_rows(rows, path, ['x'] + names)
