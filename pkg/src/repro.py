"""
repro.py — Cibles de reproduction sur les graphes de data/fixtures/.

Chaque cible recalcule ses valeurs et les compare à expected.yaml :
  - table1       : changements de base sur une table N_k^(l) donnée
  - table2       : grille 4×4, coin à coin, inclusion-exclusion tronquée (k ≤ 10)
  - fig3poly     : polynôme du réseau jouet et des graphes privés de S-1 / S-3
  - fig4curves   : courbes de la grille vers deux cibles, avant/après suppression
  - fig5tradeoff : motifs recouvrants contre motifs disjoints
  - crossing618  : croisement des importances de S-1 et S-3 sur le réseau jouet

Un écart produit ReproMismatch (code de sortie 7) avec la liste des différences.
"""

from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import yaml

from .config import DEFAULTS, fixtures_dir
from .errors import ParameterError, ReproMismatch
from .estimate import factoring_nk
from .graph import ReliabilityGraph, read_edge_list
from .importance import edge_importance, edge_removal_experiment, find_crossings
from .incexc import exact_nk, nk_from_table, nkl_truncated, tradeoff_compare
from .motifs import enumerate_motifs
from .pipeline import resolve_edge
from .poly import NklTable, check_constraints, nk_to_rk, rk_to_nk
from .rules import RuleSpec

TARGETS = ('table1', 'table2', 'fig3poly', 'fig4curves', 'fig5tradeoff', 'crossing618')


def load_expected(path: Optional[Path] = None, config: Optional[dict] = None) -> dict:
    path = path or fixtures_dir(config) / 'expected.yaml'
    with open(path, 'r', encoding='utf-8') as f:
        return yaml.safe_load(f)


def _ints(mapping: dict) -> Dict[int, int]:
    return {int(k): int(v) for k, v in mapping.items()}


def _diff_vector(name: str, expected: Dict[int, int], actual, diffs: List[dict]):
    """Compare {k: valeur} aux coefficients d'un CoefficientVector."""
    for k, value in sorted(expected.items()):
        got = actual[k] if k < len(actual) else None
        if got != value:
            diffs.append({'field': f'{name}[{k}]', 'expected': str(value), 'actual': str(got)})


def _check(name: str, ok: bool, expected, actual, diffs: List[dict]):
    if not ok:
        diffs.append({'field': name, 'expected': str(expected), 'actual': str(actual)})


# ------------------------------------------------------------------ #
#  Cibles                                                             #
# ------------------------------------------------------------------ #

def _table1(expected: dict, ctx: dict) -> Tuple[dict, List[dict]]:
    diffs: List[dict] = []
    entries = {(int(l), int(k)): int(c)
               for l, row in expected['nkl'].items() for k, c in row.items()}
    table = NklTable(expected['edge_count'], expected['motif_count'], entries)
    nk = nk_from_table(table)
    rk = nk_to_rk(nk)

    _diff_vector('nk', _ints(expected['nk']), nk, diffs)
    _diff_vector('rk', _ints(expected['rk']), rk, diffs)
    _check('round_trip', rk_to_nk(rk) == nk, nk.nonzero(), rk_to_nk(rk).nonzero(), diffs)

    report = check_constraints(table, nk)
    _check('abs_sum', report.abs_sum == expected['abs_sum'],
           expected['abs_sum'], report.abs_sum, diffs)
    _check('constraints', report.passed, True, [c.name for c in report.failures()], diffs)
    return {'nk': nk.to_dict(), 'rk': rk.to_dict(), 'constraints': report.to_dict(),
            'abs_sum_vs_signed_mass': [str(report.abs_sum), str(2 ** table.motif_count - 1)]}, diffs


def _table2(expected: dict, ctx: dict) -> Tuple[dict, List[dict]]:
    diffs: List[dict] = []
    graph = _fixture(expected['graph'], ctx)
    rule = RuleSpec.from_dict({'rule': 'two_terminal', 'source': expected['source'],
                               'target': expected['target']}, graph)
    family = enumerate_motifs(graph, rule, verbose=ctx['verbose'])
    _check('motif_count', family.motif_count == expected['motif_count'],
           expected['motif_count'], family.motif_count, diffs)
    sizes = [min(family.sizes()), max(family.sizes())]
    _check('motif_sizes', sizes == expected['motif_sizes'], expected['motif_sizes'], sizes, diffs)

    table = nkl_truncated(family, expected['k_max'], threads=ctx['threads'],
                          verbose=ctx['verbose'])
    for l, row in expected['nkl'].items():
        for k, count in row.items():
            got = table.get(int(l), int(k))
            _check(f'nkl[{l}][{k}]', got == count, count, got, diffs)
    nk = nk_from_table(table)
    _diff_vector('nk', _ints(expected['nk']), nk, diffs)
    _diff_vector('rk', _ints(expected['rk']), nk_to_rk(nk), diffs)
    return {'nkl': table.to_dict(), 'nk': nk.to_dict(), 'rk': nk_to_rk(nk).to_dict(),
            'histogram': {str(k): v for k, v in family.size_histogram().items()}}, diffs


def _fig3poly(expected: dict, ctx: dict) -> Tuple[dict, List[dict]]:
    diffs: List[dict] = []
    graph = _fixture(expected['graph'], ctx)
    rule = RuleSpec.from_dict({'rule': 'two_terminal', 'source': expected['source'],
                               'target': expected['target']}, graph)
    result = exact_nk(graph, rule, threads=ctx['threads'], verbose=ctx['verbose'])
    want = {k: v for k, v in _ints(expected['nk']).items() if v}
    _check('nk', result.nk.nonzero() == want, want, result.nk.nonzero(), diffs)

    report = check_constraints(result.table, result.nk)
    _check('constraints', report.passed, True, [c.name for c in report.failures()], diffs)
    _check('abs_sum', report.abs_sum == expected['abs_sum'],
           expected['abs_sum'], report.abs_sum, diffs)

    without = {}
    for name, ref in (('without_S1', 'S-1'), ('without_S3', 'S-3')):
        imp = edge_importance(graph, rule, resolve_edge(graph, ref), full=result.nk)
        want = _ints(expected[name])
        _check(name, imp.without.nonzero() == want, want, imp.without.nonzero(), diffs)
        without[name] = imp.without.pretty()
    return {'polynomial': result.nk.pretty(), 'nk': result.nk.to_dict(),
            'constraints': report.to_dict(), **without}, diffs


def _fig4curves(expected: dict, ctx: dict) -> Tuple[dict, List[dict]]:
    diffs: List[dict] = []
    graph = _fixture(expected['graph'], ctx)
    far = RuleSpec.from_dict({'rule': 'two_terminal', 'source': expected['source'],
                              'target': expected['target_far']}, graph)
    near = RuleSpec.from_dict({'rule': 'two_terminal', 'source': expected['source'],
                               'target': expected['target_near']}, graph)

    # Le moteur par factorisation doit retrouver les N_k de la table tronquée.
    nk_far = factoring_nk(graph, far, verbose=ctx['verbose'])
    table2 = ctx['expected']['table2']
    _diff_vector('nk_far', _ints(table2['nk']), nk_far, diffs)

    experiment = edge_removal_experiment(graph, far, near, graph.edge_set(expected['removed']),
                                         grid_points=expected['grid_points'],
                                         verbose=ctx['verbose'])
    _check('b_dominates_before', experiment.b_dominates_before, True, False, diffs)
    at_half = {name: dict(curve)[0.5] for name, curve in experiment.curves.items()}
    report = experiment.to_dict()
    report['at_half'] = at_half
    report['drop_at_half'] = {'far': at_half['before_a'] - at_half['after_a'],
                              'near': at_half['before_b'] - at_half['after_b']}
    return report, diffs


def _fig5tradeoff(expected: dict, ctx: dict) -> Tuple[dict, List[dict]]:
    diffs: List[dict] = []
    try:
        tradeoff_compare(expected['r1'], expected['k1'], expected['k2'])
        _check('r2_required', False, 'ParameterError', 'aucune erreur', diffs)
    except ParameterError:
        pass
    report = tradeoff_compare(expected['r1'], expected['k1'], expected['k2'], r2=expected['r2'])
    _check('r2_formula', str(report.r2_formula) == expected['r2_formula'],
           expected['r2_formula'], report.r2_formula, diffs)
    _check('shared_core_in_unit_interval', report.within_unit_interval['shared_core'],
           True, False, diffs)
    payload = report.to_dict()
    payload['disjoint_better_at_small_x'] = {
        name: report.disjoint_better_at_small_x(name) for name in report.overlapping}
    return payload, diffs


def _crossing618(expected: dict, ctx: dict) -> Tuple[dict, List[dict]]:
    diffs: List[dict] = []
    graph = _fixture(expected['graph'], ctx)
    rule = RuleSpec.two_terminal(graph.vertex_id('S'), graph.vertex_id('T'))
    a = resolve_edge(graph, '-'.join(expected['edge_a']))
    b = resolve_edge(graph, '-'.join(expected['edge_b']))
    roots = find_crossings(graph, rule, a, b, tol=expected['tol'])
    _check('root_count', len(roots) == 1, 1, len(roots), diffs)
    if roots:
        x = roots[0].x_star
        _check('x_star', abs(x - expected['x_star']) <= expected['accuracy'],
               expected['x_star'], x, diffs)
        _check('bracket_width', roots[0].width <= expected['tol'],
               expected['tol'], roots[0].width, diffs)
    return {'edge_a': graph.edge_label(a), 'edge_b': graph.edge_label(b),
            'crossings': [{'x_star': r.x_star, 'bracket_width': r.width} for r in roots]}, diffs


_RUNNERS: Dict[str, Callable] = {
    'table1': _table1,
    'table2': _table2,
    'fig3poly': _fig3poly,
    'fig4curves': _fig4curves,
    'fig5tradeoff': _fig5tradeoff,
    'crossing618': _crossing618,
}


def _fixture(name: str, ctx: dict) -> ReliabilityGraph:
    return read_edge_list(ctx['fixtures'] / name)


# ------------------------------------------------------------------ #
#  Point d'entrée                                                     #
# ------------------------------------------------------------------ #

def repro(target: str, config: Optional[dict] = None, threads: int = 1,
          verbose: bool = False, expected_path: Optional[Path] = None) -> dict:
    """
    Exécute une cible et retourne son rapport ; lève ReproMismatch sur écart.

    Parameters
    ----------
    target        : une des TARGETS
    expected_path : autre fichier de valeurs attendues (tests)
    """
    if target not in _RUNNERS:
        raise ParameterError(f"cible inconnue : {target!r} (parmi {', '.join(TARGETS)})")
    config = config or DEFAULTS
    expected = load_expected(expected_path, config)
    ctx = {'threads': threads, 'verbose': verbose, 'expected': expected,
           'fixtures': fixtures_dir(config)}

    if verbose:
        print(f"[Repro] cible {target}")
    report, diffs = _RUNNERS[target](expected[target], ctx)
    report = {'target': target, 'passed': not diffs, 'diffs': diffs, **report}
    if verbose:
        print(f"[Repro] {target} : {'OK' if not diffs else f'{len(diffs)} écart(s)'}")
    if diffs:
        raise ReproMismatch(target, diffs)
    return report
