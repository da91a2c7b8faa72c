"""
roots.py — Changements de signe d'une fonction sur (0, 1).

Balayage d'une grille régulière puis bisection ; le signe est évalué
exactement (fonction à valeurs rationnelles sur des x rationnels).
"""

from fractions import Fraction
from typing import Callable, List, NamedTuple


class SignChange(NamedTuple):
    """Racine isolée : x_star au milieu d'un intervalle de largeur `width`."""
    x_star: float
    width: float
    low: Fraction
    high: Fraction


def _sign(value) -> int:
    return (value > 0) - (value < 0)


def sign_changes(func: Callable[[Fraction], Fraction],
                 scan_points: int = 1024,
                 tol: float = 1e-9) -> List[SignChange]:
    """
    Racines de `func` dans (0, 1) où le signe change strictement.

    Parameters
    ----------
    func        : fonction exacte Fraction → Fraction
    scan_points : nombre de points de la grille de balayage
    tol         : largeur maximale de l'intervalle final
    """
    assert scan_points >= 2 and tol > 0
    xs = [Fraction(i, scan_points - 1) for i in range(scan_points)]
    signs = [_sign(func(x)) for x in xs]

    roots = []
    last_x, last_s = None, 0
    for x, s in zip(xs, signs):
        if s == 0:
            continue
        if last_s and s != last_s:
            roots.append(_bisect(func, last_x, x, last_s, tol))
        last_x, last_s = x, s
    return roots


def _bisect(func, low: Fraction, high: Fraction, low_sign: int, tol: float) -> SignChange:
    while high - low > tol:
        mid = (low + high) / 2
        s = _sign(func(mid))
        if s == 0:
            return SignChange(float(mid), 0.0, mid, mid)
        if s == low_sign:
            low = mid
        else:
            high = mid
    return SignChange(float((low + high) / 2), float(high - low), low, high)
