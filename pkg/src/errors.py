"""
errors.py — Hiérarchie d'exceptions du projet.

Chaque classe porte le code de sortie utilisé par la CLI :
  2  lecture du graphe (ligne mal formée, boucle)
  3  capacité dépassée (énumération exacte trop grosse)
  4  contrainte violée (identités sur N_k, solutions creuses)
  5  paramètre invalide (règle, x hors de [0, 1], cas infaisable)
  6  entrée/sortie (OSError, traduit par la CLI)
  7  reproduction : écart avec les valeurs attendues
"""

from typing import Optional


class RelipolyError(Exception):
    """Erreur de base ; `exit_code` est lu par la CLI."""

    exit_code = 1


class GraphParseError(RelipolyError):
    """Ligne de liste d'arêtes illisible."""

    exit_code = 2

    def __init__(self, message: str, line_number: Optional[int] = None):
        if line_number is not None:
            message = f"ligne {line_number} : {message}"
        super().__init__(message)
        self.line_number = line_number


class SelfLoopError(GraphParseError):
    """Arête dont les deux extrémités sont identiques."""


class CapacityError(RelipolyError):
    """Le calcul exact demandé dépasse les capacités fixées."""

    exit_code = 3


class ConstraintError(RelipolyError):
    """Une identité ou contrainte sur les coefficients n'est pas satisfaite."""

    exit_code = 4


class ParameterError(RelipolyError, ValueError):
    """Paramètre incohérent."""

    exit_code = 5


class RuleError(ParameterError):
    """Règle incompatible avec le graphe (sommet inconnu, alpha hors bornes...)."""


class DomainError(ParameterError):
    """Argument hors du domaine de définition (x ∉ [0, 1], famille vide...)."""


class InfeasibleError(ParameterError):
    """Construction impossible avec le budget d'arêtes donné."""


class ReproMismatch(RelipolyError):
    """Les valeurs recalculées diffèrent des valeurs attendues."""

    exit_code = 7

    def __init__(self, target: str, diffs: list):
        super().__init__(f"{target} : {len(diffs)} écart(s)")
        self.target = target
        self.diffs = diffs


IO_EXIT_CODE = 6
