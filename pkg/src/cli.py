"""
cli.py — Point d'entrée en ligne de commande `relipoly`.

Usage :
    relipoly nk --graph data/fixtures/toy.edges --rule two_terminal --source S --target T
    relipoly nk --graph data/fixtures/grid44.edges --rule two_terminal --source 0 --target 15 --k-max 10
    relipoly curve --graph data/fixtures/triangle.edges --rule all_terminal --output tri.csv
    relipoly mc --graph data/fixtures/toy.edges --rule two_terminal --source S --target T --samples 10000
    relipoly importance --graph data/fixtures/toy.edges --rule two_terminal --source S --target T --pair S-1,S-3
    relipoly tradeoff --r1 20 --k1 18 --k2 6 --r2 4
    relipoly repro table2

Codes de sortie : 0 succès, 2 lecture du graphe, 3 capacité, 4 contrainte,
5 paramètre, 6 entrée/sortie, 7 écart de reproduction.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from .config import load_config, resolve_threads
from .errors import IO_EXIT_CODE, ReproMismatch, RelipolyError
from .pipeline import CLOSED_FORMS, RunConfig, run
from .repro import TARGETS, repro
from .rules import RULE_KINDS

GRAPH_COMMANDS = {
    'motifs': "Famille de motifs structurels (JSON)",
    'nk': "Table N_k^(l) et coefficients N_k",
    'rk': "Coefficients R_k / P_k / N_k",
    'mc': "Estimation Monte Carlo des P_k",
    'curve': "Courbe R(x) sur une grille",
    'importance': "Importance des arêtes et croisements",
    'constraints': "Identités sur N_k^(l)",
}


# ------------------------------------------------------------------ #
#  Analyse des arguments                                              #
# ------------------------------------------------------------------ #

def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--threads", type=int, default=None,
                        help="Nombre de workers (défaut : RELIPOLY_THREADS puis configuration)")
    parser.add_argument("--verbose", action="store_true", help="Journal des composants")
    parser.add_argument("--config", type=str, default=None, help="Fichier YAML de configuration")
    parser.add_argument("--output", type=str, default=None,
                        help="Fichier de sortie .json ou .csv (défaut : sortie standard)")


def _add_graph_args(parser: argparse.ArgumentParser):
    parser.add_argument("--graph", type=str, required=True, help="Liste d'arêtes")
    parser.add_argument("--rule", choices=RULE_KINDS, default=None)
    parser.add_argument("--rule-json", type=str, default=None,
                        help="Règle JSON (texte ou fichier), remplace --rule")
    parser.add_argument("--source", type=str, default=None)
    parser.add_argument("--target", type=str, default=None)
    parser.add_argument("--terminals", type=str, default=None, help="Étiquettes séparées par ','")
    parser.add_argument("--alpha", type=str, default=None, help="Fraction, ex. 1/2 ou 0.75")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relipoly",
        description="Polynômes de fiabilité par motifs structurels")
    sub = parser.add_subparsers(dest="command", required=True)

    commands = {}
    for name, help_text in GRAPH_COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        _add_common(p)
        _add_graph_args(p)
        commands[name] = p

    commands['nk'].add_argument("--k-max", type=int, default=None,
                                help="Inclusion-exclusion tronquée aux unions ≤ k-max")
    commands['nk'].add_argument("--l-max", type=int, default=None,
                                help="Au plus l-max motifs par union")
    commands['constraints'].add_argument("--k-max", type=int, default=None)
    commands['rk'].add_argument("--method", choices=("exact", "brute"), default="exact")
    commands['rk'].add_argument("--basis", choices=("Rk", "Pk", "Nk"), default="Rk")
    for name in ('mc', 'curve'):
        commands[name].add_argument("--samples", type=int, default=None, help="Tirages par k")
        commands[name].add_argument("--seed", type=int, default=None)
    commands['curve'].add_argument("--method", choices=("exact", "mc"), default="exact")
    commands['curve'].add_argument("--grid-points", type=int, default=None)
    commands['importance'].add_argument("--edge", type=str, default=None,
                                        help="Indice ou extrémités, ex. 3 ou S-1")
    commands['importance'].add_argument("--pair", type=str, default=None,
                                        help="Deux arêtes séparées par ',' : croisements")
    commands['importance'].add_argument("--at", type=str, nargs="+", default=None,
                                        help="Valeurs de x (décimales ou p/q)")
    commands['importance'].add_argument("--crossings", action="store_true",
                                        help="Croisements entre classes d'arêtes")

    p = sub.add_parser('tradeoff', help="Motifs recouvrants contre motifs disjoints")
    _add_common(p)
    for key in ('r1', 'k1', 'k2'):
        p.add_argument(f"--{key}", type=int, required=True)
    p.add_argument("--r2", type=int, default=None, help="Impose le nombre de motifs disjoints")
    p.add_argument("--grid-points", type=int, default=None)

    p = sub.add_parser('closed-form', help="Formes closes (sans graphe)")
    _add_common(p)
    p.add_argument("--form", choices=CLOSED_FORMS, required=True)
    for key in ('m', 'k0', 'k1', 'k2', 'edges', 'delta'):
        p.add_argument(f"--{key}", type=int, default=None)

    p = sub.add_parser('repro', help="Reproduction d'une table ou figure de référence")
    _add_common(p)
    p.add_argument("target", choices=TARGETS)
    p.add_argument("--expected", type=str, default=None, help="Autre fichier de valeurs attendues")
    return parser


# ------------------------------------------------------------------ #
#  Exécution                                                          #
# ------------------------------------------------------------------ #

def _repro(args, settings: dict, threads: int) -> str:
    expected = Path(args.expected) if args.expected else None
    try:
        report = repro(args.target, settings, threads=threads, verbose=args.verbose,
                       expected_path=expected)
    except ReproMismatch as exc:
        for diff in exc.diffs:
            print(f"[Repro] {diff['field']} : attendu {diff['expected']}, "
                  f"obtenu {diff['actual']}", file=sys.stderr)
        raise
    text = json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    if args.output:
        Path(args.output).parent.mkdir(parents=True, exist_ok=True)
        Path(args.output).write_text(text, encoding='utf-8')
    else:
        sys.stdout.write(text)
    return f"{args.target} : OK"


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = load_config(args.config)
        threads = resolve_threads(args.threads, settings)
        if args.command == 'repro':
            summary = _repro(args, settings, threads)
        else:
            summary = run(RunConfig.from_args(args, settings, threads))
    except RelipolyError as exc:
        print(f"[Erreur] {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"[Erreur] entrée/sortie : {exc}", file=sys.stderr)
        return IO_EXIT_CODE

    # Le résumé part sur stderr quand le résultat occupe la sortie standard.
    print(summary, file=sys.stdout if args.output else sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
