"""
constraints.py — Identités et bornes sur N_k^(l) et N_k.

  (a) Σ_k N_k^(l) = C(f, l) pour tout l
  (b) Σ_k N_k = 1
  (c) Σ_k Σ_l N_k^(l) = 2^f − 1
  (d) N_k^(2) ≤ C(S1_k, 2) et N_k^(3) ≤ S1_k·S2_k + C(S1_k, 3),
      S_l(k) = Σ_{k'≤k} N_k'^(l)

Σ_k |N_k| est seulement rapporté : il vaut 2^f − 1 uniquement
en l'absence de compensation de signes à k fixé.
"""

from dataclasses import dataclass, field
from math import comb
from typing import List, Optional

from ..errors import ConstraintError
from .coefficients import CoefficientVector, NklTable


@dataclass
class ConstraintCheck:
    name: str
    passed: bool
    expected: Optional[int] = None
    actual: Optional[int] = None
    offending: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'passed': self.passed,
            'expected': None if self.expected is None else str(self.expected),
            'actual': None if self.actual is None else str(self.actual),
            'offending': self.offending,
        }


@dataclass
class ConstraintReport:
    """Résultat de check_constraints ; `passed` ignore les contrôles informatifs."""

    motif_count: int
    checks: List[ConstraintCheck] = field(default_factory=list)
    partial: bool = False
    empty_family: bool = False
    abs_sum: int = 0
    abs_sum_matches: bool = False

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[ConstraintCheck]:
        return [c for c in self.checks if not c.passed]

    def raise_if_failed(self):
        if not self.passed:
            names = ', '.join(c.name for c in self.failures())
            raise ConstraintError(f"contraintes violées : {names}")

    def to_dict(self) -> dict:
        return {
            'motif_count': self.motif_count,
            'passed': self.passed,
            'partial': self.partial,
            'empty_family': self.empty_family,
            'abs_sum': str(self.abs_sum),
            'abs_sum_matches': self.abs_sum_matches,
            'checks': [c.to_dict() for c in self.checks],
        }


def _collapse(table: NklTable) -> dict:
    nk = {}
    for (l, k), count in table.entries.items():
        nk[k] = nk.get(k, 0) + (count if l % 2 else -count)
    return nk


def check_constraints(table: NklTable, nk: CoefficientVector) -> ConstraintReport:
    """
    Vérifie les identités (a)–(d) et la cohérence de nk avec la table.

    Une table tronquée donne un rapport partiel : seules les bornes (d)
    et la cohérence pour k ≤ K_max sont vérifiables.
    """
    f = table.motif_count
    report = ConstraintReport(motif_count=f, partial=table.is_truncated,
                              empty_family=(f == 0))
    coeffs = nk.coefficients
    report.abs_sum = sum(abs(c) for c in coeffs)
    report.abs_sum_matches = report.abs_sum == 2 ** f - 1

    limit = table.truncation if table.is_truncated else nk.edge_count
    collapsed = _collapse(table)
    bad = [k for k in range(min(limit, nk.edge_count) + 1)
           if collapsed.get(k, 0) != coeffs[k]]
    report.checks.append(ConstraintCheck('nk_matches_table', not bad, offending=bad))

    if not table.is_truncated:
        bad_levels = []
        for l in range(1, f + 1):
            total = sum(table.level(l).values())
            if total != comb(f, l):
                bad_levels.append({'l': l, 'expected': str(comb(f, l)), 'actual': str(total)})
        report.checks.append(ConstraintCheck('level_sums', not bad_levels,
                                             offending=bad_levels))

        expected_sum = 1 if f else 0
        actual_sum = sum(coeffs)
        report.checks.append(ConstraintCheck('nk_sum', actual_sum == expected_sum,
                                             expected_sum, actual_sum))

        mass = sum(table.entries.values())
        report.checks.append(ConstraintCheck('signed_mass', mass == 2 ** f - 1,
                                             2 ** f - 1, mass))

    bad_bounds = []
    s1 = s2 = 0
    for k in range(table.edge_count + 1):
        s1 += table.get(1, k)
        s2 += table.get(2, k)
        n2, n3 = table.get(2, k), table.get(3, k)
        if n2 > comb(s1, 2):
            bad_bounds.append({'k': k, 'l': 2, 'value': str(n2), 'bound': str(comb(s1, 2))})
        bound3 = s1 * s2 + comb(s1, 3)
        if n3 > bound3:
            bad_bounds.append({'k': k, 'l': 3, 'value': str(n3), 'bound': str(bound3)})
    report.checks.append(ConstraintCheck('overlap_bounds', not bad_bounds,
                                         offending=bad_bounds))
    return report
