"""
closed_forms.py — Formes closes pour des familles de motifs structurées.

Base Nk :
  - motifs disjoints          R(x) = 1 − (1 − x^k0)^m
  - chaîne de recouvrement    R(x) = x^(k0−1) [1 − (1 − x)^m]
  - solutions creuses à deux ou trois supports
Base Rk (vérifications croisées de nk_to_rk) :
  - un motif, n motifs disjoints, deux motifs de recouvrement Δ
"""

from math import comb
from typing import Optional

from ..errors import ConstraintError, InfeasibleError, ParameterError
from .coefficients import CoefficientVector


def _binom(n: int, k: int) -> int:
    """C(n, k) avec la convention C(n, k) = 0 pour k < 0."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def _check_positive(**values):
    for name, value in values.items():
        if value < 1:
            raise ParameterError(f"{name} doit être ≥ 1 (reçu {value})")


# ------------------------------------------------------------------ #
#  Base Nk                                                            #
# ------------------------------------------------------------------ #

def closed_form_disjoint(m: int, k0: int, edge_count: int) -> CoefficientVector:
    """m motifs disjoints de taille k0 : N_{l·k0} = (−1)^(l+1) C(m, l)."""
    _check_positive(m=m, k0=k0)
    if m * k0 > edge_count:
        raise InfeasibleError(f"{m} motifs disjoints de taille {k0} demandent "
                              f"{m * k0} arêtes > E = {edge_count}")
    values = {l * k0: (-1) ** (l + 1) * comb(m, l) for l in range(1, m + 1)}
    return CoefficientVector.from_mapping('Nk', edge_count, values)


def closed_form_chain_overlap(m: int, k0: int, edge_count: int) -> CoefficientVector:
    """m motifs de taille k0 partageant deux à deux tout sauf une arête."""
    _check_positive(m=m, k0=k0)
    if k0 - 1 + m > edge_count:
        raise InfeasibleError(f"chaîne de {m} motifs de taille {k0} : "
                              f"{k0 - 1 + m} arêtes > E = {edge_count}")
    values = {k0 + l - 1: (-1) ** (l + 1) * comb(m, l) for l in range(1, m + 1)}
    return CoefficientVector.from_mapping('Nk', edge_count, values)


def sparse_nk_solutions(m: int, k0: int, k1: int, k2: Optional[int] = None,
                        edge_count: Optional[int] = None) -> CoefficientVector:
    """
    Seules solutions de N_k à deux ou trois supports.

    Parameters
    ----------
    m          : nombre de motifs de taille minimale k0
    k0, k1, k2 : supports (k2 absent → cas à deux supports)
    edge_count : E (par défaut le plus grand support)
    """
    _check_positive(m=m, k0=k0)
    if k2 is None:
        if m != 2:
            raise ConstraintError(f"deux supports : seule m = 2 est possible (reçu m = {m})")
        if not k0 + 1 <= k1 <= m * k0:
            raise ConstraintError(f"deux supports : il faut k0 + 1 ≤ k1 ≤ m·k0 "
                                  f"(k0 = {k0}, k1 = {k1})")
        values = {k0: 2, k1: -1}
    else:
        if m < 3:
            raise ConstraintError(f"trois supports : il faut m ≥ 3 (reçu m = {m})")
        if not k0 < k1 < k2:
            raise ConstraintError(f"trois supports : il faut k0 < k1 < k2 "
                                  f"({k0}, {k1}, {k2})")
        half = 2 ** (m - 1)
        values = {k0: m, k1: 1 - half, k2: half - m}

    top = max(values)
    if edge_count is None:
        edge_count = top
    elif edge_count < top:
        raise InfeasibleError(f"support {top} > E = {edge_count}")
    vector = CoefficientVector.from_mapping('Nk', edge_count, values)
    assert sum(vector.coefficients) == 1
    return vector


# ------------------------------------------------------------------ #
#  Base Rk                                                            #
# ------------------------------------------------------------------ #

def single_motif_rk(k0: int, edge_count: int) -> CoefficientVector:
    """R_k = C(E − k0, k − k0)."""
    return disjoint_motifs_rk(1, k0, edge_count)


def disjoint_motifs_rk(n: int, k0: int, edge_count: int) -> CoefficientVector:
    """R_k = Σ_i (−1)^(i+1) C(n, i) C(E − i·k0, k − i·k0)."""
    _check_positive(n=n, k0=k0)
    if n * k0 > edge_count:
        raise InfeasibleError(f"{n} motifs disjoints de taille {k0} : E = {edge_count} trop petit")
    E = edge_count
    coeffs = [sum((-1) ** (i + 1) * comb(n, i) * _binom(E - i * k0, k - i * k0)
                  for i in range(1, n + 1))
              for k in range(E + 1)]
    return CoefficientVector('Rk', E, tuple(coeffs))


def two_overlapping_rk(k0: int, delta: int, edge_count: int) -> CoefficientVector:
    """Deux motifs de taille k0 dont l'union a k0 + Δ arêtes."""
    _check_positive(k0=k0, delta=delta)
    if delta > k0:
        raise ParameterError(f"Δ = {delta} > k0 = {k0}")
    if k0 + delta > edge_count:
        raise InfeasibleError(f"union de {k0 + delta} arêtes > E = {edge_count}")
    E = edge_count
    coeffs = [2 * _binom(E - k0, k - k0) - _binom(E - k0 - delta, k - k0 - delta)
              for k in range(E + 1)]
    return CoefficientVector('Rk', E, tuple(coeffs))
