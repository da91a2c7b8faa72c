"""
coefficients.py — Coefficients exacts du polynôme de fiabilité.

Trois bases pour le même polynôme R(x) de degré ≤ E :
  - Rk : R(x) = Σ R_k x^k (1−x)^(E−k)     (R_k = sous-graphes acceptés de taille k)
  - Pk : P_k = R_k / C(E, k)               (fraction acceptée à taille k)
  - Nk : R(x) = Σ N_k x^k                  (entiers signés)

Toute l'arithmétique est entière ou rationnelle (fractions.Fraction) ;
les flottants n'apparaissent qu'à l'évaluation.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

import sympy

from ..errors import DomainError, ParameterError

BASES = ('Rk', 'Pk', 'Nk')

Number = Union[int, Fraction]


# ------------------------------------------------------------------ #
#  Vecteur de coefficients                                            #
# ------------------------------------------------------------------ #

@dataclass(frozen=True)
class CoefficientVector:
    """
    Coefficients d'un polynôme de fiabilité dans une base donnée.

    Parameters
    ----------
    basis        : 'Rk', 'Pk' ou 'Nk'
    edge_count   : E
    coefficients : E + 1 valeurs (entiers pour Rk/Nk, fractions pour Pk)
    truncation   : K_max si seuls les coefficients k ≤ K_max sont exacts
    """

    basis: str
    edge_count: int
    coefficients: Tuple[Number, ...]
    truncation: Optional[int] = None

    def __post_init__(self):
        if self.basis not in BASES:
            raise ParameterError(f"base inconnue : {self.basis!r}")
        if len(self.coefficients) != self.edge_count + 1:
            raise ParameterError(
                f"{len(self.coefficients)} coefficients pour E = {self.edge_count} "
                f"(attendu {self.edge_count + 1})")
        object.__setattr__(self, 'coefficients', tuple(self.coefficients))

    @classmethod
    def zeros(cls, basis: str, edge_count: int) -> "CoefficientVector":
        return cls(basis, edge_count, (0,) * (edge_count + 1))

    @classmethod
    def from_mapping(cls, basis: str, edge_count: int,
                     values: Mapping[int, Number],
                     truncation: Optional[int] = None) -> "CoefficientVector":
        """Construit un vecteur creux {k: valeur}."""
        coeffs = [0] * (edge_count + 1)
        for k, value in values.items():
            if not 0 <= k <= edge_count:
                raise ParameterError(f"indice {k} hors de [0, {edge_count}]")
            coeffs[k] = value
        return cls(basis, edge_count, tuple(coeffs), truncation)

    @property
    def is_truncated(self) -> bool:
        return self.truncation is not None

    def nonzero(self) -> Dict[int, Number]:
        return {k: c for k, c in enumerate(self.coefficients) if c != 0}

    def with_edge_count(self, edge_count: int) -> "CoefficientVector":
        """Nk uniquement : même polynôme, vu dans un univers de E' arêtes."""
        assert self.basis == 'Nk', "seule la base Nk ne dépend pas de E"
        values = self.nonzero()
        if values and max(values) > edge_count:
            raise ParameterError(f"degré {max(values)} > E' = {edge_count}")
        return CoefficientVector.from_mapping('Nk', edge_count, values, self.truncation)

    def pretty(self) -> str:
        """Polynôme lisible en x (base Nk) ou somme de termes (autres bases)."""
        x = sympy.Symbol('x')
        E = self.edge_count
        if self.basis == 'Nk':
            expr = sum(sympy.Integer(c) * x ** k for k, c in self.nonzero().items())
        elif self.basis == 'Rk':
            expr = sum(sympy.Integer(c) * x ** k * (1 - x) ** (E - k)
                       for k, c in self.nonzero().items())
        else:
            expr = sum(sympy.Rational(c.numerator, c.denominator) * comb(E, k)
                       * x ** k * (1 - x) ** (E - k)
                       for k, c in self.nonzero().items())
        return sympy.sstr(sympy.sympify(expr), order='rev-lex')

    def to_dict(self) -> dict:
        """JSON : les entiers sont écrits en chaînes décimales."""
        return {
            'basis': self.basis,
            'edge_count': self.edge_count,
            'truncation': self.truncation,
            'coefficients': [str(c) for c in self.coefficients],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CoefficientVector":
        basis = data['basis']
        parse = Fraction if basis == 'Pk' else int
        return cls(basis, int(data['edge_count']),
                   tuple(parse(c) for c in data['coefficients']),
                   data.get('truncation'))

    def __getitem__(self, k: int) -> Number:
        return self.coefficients[k]

    def __len__(self) -> int:
        return len(self.coefficients)


# ------------------------------------------------------------------ #
#  Table N_k^(l)                                                      #
# ------------------------------------------------------------------ #

@dataclass(frozen=True)
class NklTable:
    """
    N_k^(l) : nombre de combinaisons de l motifs dont l'union a exactement k arêtes.

    Parameters
    ----------
    edge_count  : E
    motif_count : f
    entries     : {(l, k): N_k^(l)} (entrées nulles omises)
    truncation  : K_max si seules les entrées k ≤ K_max sont complètes
    """

    edge_count: int
    motif_count: int
    entries: Dict[Tuple[int, int], int] = field(default_factory=dict)
    truncation: Optional[int] = None

    def __post_init__(self):
        clean = {}
        for (l, k), count in sorted(self.entries.items()):
            assert l >= 1 and count >= 0, "entrée N_k^(l) invalide"
            if count:
                clean[(l, k)] = count
        object.__setattr__(self, 'entries', clean)

    @property
    def is_truncated(self) -> bool:
        return self.truncation is not None

    def get(self, l: int, k: int) -> int:
        return self.entries.get((l, k), 0)

    def levels(self) -> Tuple[int, ...]:
        return tuple(sorted({l for l, _ in self.entries}))

    def level(self, l: int) -> Dict[int, int]:
        """{k: N_k^(l)} pour un l donné."""
        return {k: c for (ll, k), c in self.entries.items() if ll == l}

    def to_dict(self) -> dict:
        """Disposition des tables : une ligne par k, une colonne par l."""
        ks = sorted({k for _, k in self.entries})
        rows = []
        for k in ks:
            rows.append({
                'k': k,
                'N_l': {str(l): str(self.get(l, k)) for l in self.levels() if self.get(l, k)},
            })
        return {
            'edge_count': self.edge_count,
            'motif_count': self.motif_count,
            'truncation': self.truncation,
            'rows': rows,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NklTable":
        entries = {}
        for row in data['rows']:
            for l, count in row['N_l'].items():
                entries[(int(l), int(row['k']))] = int(count)
        return cls(int(data['edge_count']), int(data['motif_count']),
                   entries, data.get('truncation'))


# ------------------------------------------------------------------ #
#  Changements de base                                                #
# ------------------------------------------------------------------ #

def _require(v: CoefficientVector, basis: str):
    if v.basis != basis:
        raise ParameterError(f"base {basis} attendue, reçu {v.basis}")


def rk_to_pk(v: CoefficientVector) -> CoefficientVector:
    """P_k = R_k / C(E, k), division rationnelle exacte."""
    _require(v, 'Rk')
    E = v.edge_count
    return CoefficientVector('Pk', E,
                             tuple(Fraction(r, comb(E, k)) for k, r in enumerate(v.coefficients)),
                             v.truncation)


def pk_to_rk(v: CoefficientVector) -> CoefficientVector:
    """R_k = P_k · C(E, k) ; doit être entier."""
    _require(v, 'Pk')
    E = v.edge_count
    coeffs = []
    for k, p in enumerate(v.coefficients):
        r = Fraction(p) * comb(E, k)
        if r.denominator != 1:
            raise ParameterError(f"P_{k} · C(E, k) non entier : {r}")
        coeffs.append(r.numerator)
    return CoefficientVector('Rk', E, tuple(coeffs), v.truncation)


def rk_to_nk(v: CoefficientVector) -> CoefficientVector:
    """N_l = (−1)^l Σ_{k≤l} (−1)^k C(E−k, l−k) R_k."""
    _require(v, 'Rk')
    E = v.edge_count
    R = v.coefficients
    coeffs = []
    for l in range(E + 1):
        total = 0
        for k in range(l + 1):
            if R[k]:
                term = comb(E - k, l - k) * R[k]
                total += -term if k % 2 else term
        coeffs.append(-total if l % 2 else total)
    return CoefficientVector('Nk', E, tuple(coeffs), v.truncation)


def nk_to_rk(v: CoefficientVector) -> CoefficientVector:
    """R_k = Σ_{k'≤k} N_k' C(E−k', k−k')."""
    _require(v, 'Nk')
    E = v.edge_count
    N = v.coefficients
    coeffs = []
    for k in range(E + 1):
        coeffs.append(sum(N[kp] * comb(E - kp, k - kp) for kp in range(k + 1) if N[kp]))
    return CoefficientVector('Rk', E, tuple(coeffs), v.truncation)


# ------------------------------------------------------------------ #
#  Évaluation                                                         #
# ------------------------------------------------------------------ #

def parse_x(x) -> Union[float, Fraction]:
    """x en flottant, ou en fraction exacte si donné comme chaîne / Fraction / entier."""
    if isinstance(x, str):
        try:
            x = Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"x illisible : {x!r}")
    elif isinstance(x, int) and not isinstance(x, bool):
        x = Fraction(x)
    elif not isinstance(x, Fraction):
        x = float(x)
    if not 0 <= x <= 1:
        raise DomainError(f"x = {x} hors de [0, 1]")
    return x


def _exact_value(v: CoefficientVector, x: Fraction) -> Fraction:
    E = v.edge_count
    if v.basis == 'Nk':
        return sum((Fraction(c) * x ** k for k, c in v.nonzero().items()), Fraction(0))
    weights = (lambda k: 1) if v.basis == 'Rk' else (lambda k: comb(E, k))
    y = 1 - x
    return sum((Fraction(c) * weights(k) * x ** k * y ** (E - k)
                for k, c in v.nonzero().items()), Fraction(0))


def evaluate(v: CoefficientVector, x) -> Union[float, Fraction]:
    """
    R(x) dans n'importe quelle base.

    Avec un x flottant, la somme est faite exactement sur la valeur binaire
    de x puis arrondie une seule fois (les N_k alternent de signe) ;
    avec un x rationnel (chaîne 'p/q', Fraction, entier) le résultat est exact.
    """
    x = parse_x(x)
    if isinstance(x, Fraction):
        return _exact_value(v, x)
    return float(_exact_value(v, Fraction(x)))


def evaluate_many(v: CoefficientVector, xs: Iterable) -> list:
    return [evaluate(v, x) for x in xs]
