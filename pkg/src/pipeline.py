"""
pipeline.py — Orchestration : graphe + règle → calcul → fichiers.

Pipelines :
  - 'motifs'      : famille de motifs (JSON)
  - 'nk'          : table N_k^(l) et N_k (complète, tronquée, ou factorisation)
  - 'rk'          : coefficients R_k / P_k / N_k (exact ou force brute)
  - 'mc'          : estimation Monte Carlo de P_k (CSV ou JSON)
  - 'curve'       : courbe R(x) (CSV)
  - 'importance'  : importance des arêtes, classements, croisements
  - 'tradeoff'    : motifs recouvrants contre motifs disjoints
  - 'constraints' : identités sur N_k^(l)
  - 'closed-form' : formes closes (sans graphe)

Un résultat est un dict JSON (entiers écrits en chaînes) ou des lignes CSV ;
run() écrit le fichier demandé et retourne une ligne de résumé.
"""

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple

from .config import DEFAULTS
from .errors import ParameterError, RuleError
from .estimate import (brute_force_rk, monte_carlo_pk, reliability_curve, write_curve_csv,
                       write_rows)
from .graph import ReliabilityGraph, read_edge_list
from .importance import edge_importance, find_crossings, importance_table
from .incexc import UnionEnumerationPlan, exact_nk, nk_from_table, tradeoff_compare
from .motifs import enumerate_motifs, is_antichain
from .poly import (check_constraints, closed_form_chain_overlap, closed_form_disjoint,
                   disjoint_motifs_rk, nk_to_rk, parse_x, rk_to_nk, rk_to_pk,
                   single_motif_rk, sparse_nk_solutions, two_overlapping_rk)
from .rules import RuleSpec

PIPELINES = ('motifs', 'nk', 'rk', 'mc', 'curve', 'importance', 'tradeoff',
             'constraints', 'closed-form')
GRAPH_FREE = ('tradeoff', 'closed-form')
CLOSED_FORMS = ('disjoint', 'chain', 'sparse', 'single-rk', 'disjoint-rk', 'two-overlap-rk')


@dataclass
class RunConfig:
    """
    Configuration typée d'une exécution.

    Parameters
    ----------
    pipeline    : un des PIPELINES
    graph_path  : liste d'arêtes (sauf tradeoff / closed-form)
    rule        : dict de règle {"rule": ..., "source": ..., ...}
    output_path : fichier de sortie (.json ou .csv) ; None = sortie standard
    """

    pipeline: str
    graph_path: Optional[str] = None
    rule: Optional[dict] = None
    output_path: Optional[str] = None
    seed: int = DEFAULTS['estimate']['seed']
    k_max: Optional[int] = None
    l_max: Optional[int] = None
    samples: Optional[int] = None
    grid_points: int = DEFAULTS['curve']['grid_points']
    threads: int = 1
    verbose: bool = False
    method: str = 'exact'
    basis: str = 'Rk'
    edge: Optional[str] = None
    pair: Optional[Tuple[str, str]] = None
    at: List[str] = field(default_factory=list)
    crossings: bool = False
    params: dict = field(default_factory=dict)
    settings: dict = field(default_factory=lambda: DEFAULTS)

    def __post_init__(self):
        if self.pipeline not in PIPELINES:
            raise ParameterError(f"pipeline inconnu : {self.pipeline!r}")

    @classmethod
    def from_args(cls, args, settings: dict, threads: int) -> "RunConfig":
        """Construit la configuration depuis l'espace de noms argparse."""
        rule = None
        if getattr(args, 'rule', None):
            rule = {'rule': args.rule}
            for key in ('source', 'target', 'alpha'):
                if getattr(args, key, None) is not None:
                    rule[key] = getattr(args, key)
            if getattr(args, 'terminals', None):
                rule['terminals'] = [t for t in args.terminals.split(',') if t]
        if getattr(args, 'rule_json', None):
            text = args.rule_json
            if Path(text).is_file():
                text = Path(text).read_text(encoding='utf-8')
            try:
                rule = json.loads(text)
            except json.JSONDecodeError as exc:
                raise RuleError(f"règle JSON illisible : {exc}")

        pair = None
        if getattr(args, 'pair', None):
            parts = args.pair.split(',')
            if len(parts) != 2:
                raise ParameterError("--pair attend deux arêtes séparées par une virgule")
            pair = (parts[0], parts[1])

        params = {key: getattr(args, key) for key in
                  ('form', 'm', 'k0', 'k1', 'k2', 'r1', 'r2', 'edges', 'delta')
                  if getattr(args, key, None) is not None}

        estimate = settings['estimate']
        config = cls(
            pipeline=args.command,
            graph_path=getattr(args, 'graph', None),
            rule=rule,
            output_path=args.output,
            seed=args.seed if getattr(args, 'seed', None) is not None else estimate['seed'],
            k_max=getattr(args, 'k_max', None),
            l_max=getattr(args, 'l_max', None),
            samples=(args.samples if getattr(args, 'samples', None) is not None
                     else estimate['samples']),
            grid_points=(args.grid_points if getattr(args, 'grid_points', None) is not None
                         else settings['curve']['grid_points']),
            threads=threads,
            verbose=args.verbose,
            method=getattr(args, 'method', None) or 'exact',
            basis=getattr(args, 'basis', None) or 'Rk',
            edge=getattr(args, 'edge', None),
            pair=pair,
            at=list(getattr(args, 'at', None) or []),
            crossings=bool(getattr(args, 'crossings', False)),
            params=params,
            settings=settings,
        )
        config.validate()
        return config

    def validate(self):
        if self.pipeline not in GRAPH_FREE:
            if not self.graph_path:
                raise ParameterError(f"'{self.pipeline}' demande --graph")
            if self.rule is None:
                raise RuleError(f"'{self.pipeline}' demande une règle (--rule ou --rule-json)")
        if self.pipeline == 'mc' and (self.samples is None or self.samples < 1):
            raise ParameterError("'mc' demande --samples ≥ 1")
        if self.pipeline == 'tradeoff':
            for key in ('r1', 'k1', 'k2'):
                if key not in self.params:
                    raise ParameterError(f"'tradeoff' demande --{key}")
        if self.pipeline == 'closed-form':
            if self.params.get('form') not in CLOSED_FORMS:
                raise ParameterError(f"--form parmi : {', '.join(CLOSED_FORMS)}")
        if self.grid_points < 2:
            raise ParameterError("--grid-points doit être ≥ 2")


# ------------------------------------------------------------------ #
#  Résolution des références                                          #
# ------------------------------------------------------------------ #

def resolve_edge(graph: ReliabilityGraph, ref) -> int:
    """Arête par indice ('3') ou par extrémités ('S-1', première arête trouvée)."""
    text = str(ref)
    if text.isdigit():
        edge = int(text)
        if not 0 <= edge < graph.edge_count:
            raise ParameterError(f"arête {edge} hors de [0, {graph.edge_count})")
        return edge
    if '-' in text:
        a, b = text.split('-', 1)
        try:
            va, vb = graph.vertex_id(a), graph.vertex_id(b)
        except KeyError as exc:
            raise ParameterError(f"arête inconnue {text!r} : {exc}")
        for i, (u, v) in enumerate(graph.edges):
            if {u, v} == {va, vb}:
                return i
    raise ParameterError(f"arête inconnue : {text!r}")


# ------------------------------------------------------------------ #
#  Pipelines                                                          #
# ------------------------------------------------------------------ #

def _caps(config: RunConfig) -> dict:
    s = config.settings
    return {'full': s['incexc']['full_motif_cap'],
            'generic': s['motifs']['generic_edge_cap'],
            'brute': s['estimate']['brute_force_edge_cap']}


def _motifs(config, graph, rule):
    family = enumerate_motifs(graph, rule, edge_cap=_caps(config)['generic'],
                              verbose=config.verbose)
    assert is_antichain(family), "famille de motifs non minimale"
    payload = family.to_dict(graph)
    payload['motifs_labels'] = [[graph.edge_label(e) for e in m.indices()]
                                for m in family.motifs]
    return payload, f"{family.motif_count} motifs, tailles {family.size_histogram()}"


def _nk(config, graph, rule):
    caps = _caps(config)
    if config.k_max is not None or config.l_max is not None:
        family = enumerate_motifs(graph, rule, edge_cap=caps['generic'], verbose=config.verbose)
        plan = UnionEnumerationPlan('truncated' if config.k_max is not None else 'full',
                                    k_max=config.k_max, l_max=config.l_max)
        table = plan.run(family, threads=config.threads, cap=caps['full'],
                         verbose=config.verbose)
        nk, engine = nk_from_table(table), f'inclusion_exclusion_{plan.mode}'
    else:
        result = exact_nk(graph, rule, threads=config.threads, cap=caps['full'],
                          verbose=config.verbose)
        table, nk, engine = result.table, result.nk, result.engine

    payload = {
        'rule': rule.to_dict(graph),
        'engine': engine,
        'nkl': table.to_dict() if table is not None else None,
        'nk': nk.to_dict(),
        'rk': nk_to_rk(nk).to_dict(),
        'polynomial': nk.pretty(),
    }
    return payload, f"N_k ({engine}) : {nk.pretty()}"


def _rk(config, graph, rule):
    if config.method == 'brute':
        rk = brute_force_rk(graph, rule, cap=_caps(config)['brute'], threads=config.threads,
                            verbose=config.verbose)
    else:
        rk = nk_to_rk(exact_nk(graph, rule, threads=config.threads,
                               cap=_caps(config)['full'], verbose=config.verbose).nk)
    vector = {'Rk': rk, 'Pk': rk_to_pk(rk), 'Nk': rk_to_nk(rk)}.get(config.basis)
    if vector is None:
        raise ParameterError(f"base inconnue : {config.basis!r}")
    return {'rule': rule.to_dict(graph), 'method': config.method,
            'coefficients': vector.to_dict()}, f"{config.basis} ({config.method}) calculés"


def _mc(config, graph, rule):
    est = config.settings['estimate']
    mc = monte_carlo_pk(graph, rule, config.samples, seed=config.seed,
                        threads=config.threads, block_size=est['block_size'],
                        verbose=config.verbose)
    return mc, f"P_k estimés : {config.samples} tirages par k, graine {config.seed}"


def _curve(config, graph, rule):
    if config.method == 'mc':
        source, _ = _mc(config, graph, rule)
    else:
        source = exact_nk(graph, rule, threads=config.threads, cap=_caps(config)['full'],
                          verbose=config.verbose).nk
    curve = reliability_curve(source, config.grid_points,
                              log_space_above=config.settings['curve']['log_space_above'])
    return curve, f"courbe R(x) sur {config.grid_points} points ({config.method})"


def _importance(config, graph, rule):
    imp_cfg = config.settings['importance']
    cap = _caps(config)['full']
    tol, scan = imp_cfg['tol'], imp_cfg['scan_points']

    if config.pair is not None:
        a, b = (resolve_edge(graph, ref) for ref in config.pair)
        roots = find_crossings(graph, rule, a, b, tol=tol, scan_points=scan, cap=cap)
        payload = {'edge_a': a, 'edge_b': b,
                   'crossings': [{'x_star': r.x_star, 'bracket_width': r.width} for r in roots]}
        return payload, f"{len(roots)} croisement(s) entre {graph.edge_label(a)} et {graph.edge_label(b)}"

    if config.edge is not None:
        e = resolve_edge(graph, config.edge)
        imp = edge_importance(graph, rule, e, cap=cap)
        xs = [parse_x(x) for x in config.at] or [0.5]
        payload = {'edge': e, 'label': graph.edge_label(e),
                   'without_nk': imp.without.to_dict(),
                   'without_polynomial': imp.without.pretty(),
                   'values': {str(x): imp.value(x) for x in xs}}
        return payload, f"importance de {graph.edge_label(e)} calculée"

    xs = [parse_x(x) for x in config.at] or [0.25, 0.5, 0.75]
    report = importance_table(graph, rule, xs, threads=config.threads, cap=cap,
                              with_crossings=config.crossings, tol=tol, scan_points=scan,
                              verbose=config.verbose)
    payload = report.to_dict(graph)
    payload['values'] = {str(e): v for e, v in report.values.items()}
    payload['xs'] = [float(x) for x in xs]
    return payload, f"{len(report.classes)} classes d'arêtes, {len(report.crossings)} croisement(s)"


def _tradeoff(config):
    p = config.params
    imp_cfg = config.settings['importance']
    report = tradeoff_compare(p['r1'], p['k1'], p['k2'], r2=p.get('r2'),
                              grid_points=config.grid_points,
                              scan_points=imp_cfg['scan_points'], tol=imp_cfg['tol'])
    return report, f"r2 = {report.r2} (formule : {report.r2_formula})"


def _constraints(config, graph, rule):
    family = enumerate_motifs(graph, rule, edge_cap=_caps(config)['generic'],
                              verbose=config.verbose)
    plan = UnionEnumerationPlan('truncated' if config.k_max is not None else 'full',
                                k_max=config.k_max)
    table = plan.run(family, threads=config.threads, cap=_caps(config)['full'],
                     verbose=config.verbose)
    report = check_constraints(table, nk_from_table(table))
    status = 'respectées' if report.passed else 'VIOLÉES'
    return report, f"contraintes {status} (f = {family.motif_count}, Σ|N_k| = {report.abs_sum})"


def _closed_form(config):
    p = config.params
    form = p['form']
    need = {'disjoint': ('m', 'k0', 'edges'), 'chain': ('m', 'k0', 'edges'),
            'sparse': ('m', 'k0', 'k1'), 'single-rk': ('k0', 'edges'),
            'disjoint-rk': ('m', 'k0', 'edges'), 'two-overlap-rk': ('k0', 'delta', 'edges')}
    missing = [key for key in need[form] if key not in p]
    if missing:
        raise ParameterError(f"--form {form} demande : {', '.join('--' + k for k in missing)}")

    if form == 'disjoint':
        vector = closed_form_disjoint(p['m'], p['k0'], p['edges'])
    elif form == 'chain':
        vector = closed_form_chain_overlap(p['m'], p['k0'], p['edges'])
    elif form == 'sparse':
        vector = sparse_nk_solutions(p['m'], p['k0'], p['k1'], p.get('k2'), p.get('edges'))
    elif form == 'single-rk':
        vector = single_motif_rk(p['k0'], p['edges'])
    elif form == 'disjoint-rk':
        vector = disjoint_motifs_rk(p['m'], p['k0'], p['edges'])
    else:
        vector = two_overlapping_rk(p['k0'], p['delta'], p['edges'])
    return {'form': form, 'coefficients': vector.to_dict(),
            'polynomial': vector.pretty()}, f"{form} : {vector.pretty()}"


# ------------------------------------------------------------------ #
#  Écriture                                                           #
# ------------------------------------------------------------------ #

def _to_json(result) -> dict:
    return result if isinstance(result, dict) else result.to_dict()


def _write(config: RunConfig, result):
    path = config.output_path
    as_csv = path is not None and path.endswith('.csv')

    if as_csv:
        if config.pipeline == 'mc':
            result.write_csv(path)
        elif config.pipeline == 'curve':
            write_curve_csv(result, path)
        elif config.pipeline == 'tradeoff':
            write_rows(result.curve, path, list(result.curve[0]))
        elif config.pipeline == 'importance' and 'values' in result and 'xs' in result:
            rows = [{'x': x, **{e: values[i] for e, values in result['values'].items()}}
                    for i, x in enumerate(result['xs'])]
            write_rows(rows, path, ['x'] + list(result['values']))
        else:
            raise ParameterError(f"pas de sortie CSV pour '{config.pipeline}'")
        return

    if config.pipeline == 'curve':
        payload = {'curve': [{'x': x, 'R': r} for x, r in result]}
    else:
        payload = _to_json(result)
    text = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text, encoding='utf-8')


def run(config: RunConfig) -> str:
    """Exécute le pipeline, écrit la sortie et retourne la ligne de résumé."""
    config.validate()
    if config.pipeline == 'tradeoff':
        result, summary = _tradeoff(config)
    elif config.pipeline == 'closed-form':
        result, summary = _closed_form(config)
    else:
        graph = read_edge_list(config.graph_path)
        rule = RuleSpec.from_dict(config.rule, graph)
        if config.verbose:
            print(f"[Pipeline] {graph!r}, règle {rule.label(graph)}")
        handler = {'motifs': _motifs, 'nk': _nk, 'rk': _rk, 'mc': _mc, 'curve': _curve,
                   'importance': _importance, 'constraints': _constraints}[config.pipeline]
        result, summary = handler(config, graph, rule)

    _write(config, result)
    if config.pipeline == 'constraints':
        result.raise_if_failed()
    return summary
