"""
generators.py — Lecture des listes d'arêtes et graphes réguliers.

Format texte : une arête par ligne, deux étiquettes séparées par des blancs ;
une ligne commençant par '#' est un commentaire, une ligne vide est ignorée.
Les sommets reçoivent leur identifiant dans l'ordre de première apparition,
les arêtes sont numérotées dans l'ordre du fichier.
"""

import io
from pathlib import Path
from typing import List, TextIO, Tuple, Union

from ..errors import GraphParseError, ParameterError, SelfLoopError
from .multigraph import ReliabilityGraph


# ------------------------------------------------------------------ #
#  Liste d'arêtes                                                     #
# ------------------------------------------------------------------ #

def parse_edge_list(text: Union[str, TextIO]) -> ReliabilityGraph:
    """
    Construit un graphe depuis une liste d'arêtes (chaîne ou flux texte).

    Les lignes identiques donnent des arêtes parallèles distinctes.
    """
    stream = io.StringIO(text) if isinstance(text, str) else text
    labels: dict = {}
    edges: List[Tuple[int, int]] = []

    for line_number, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphParseError(
                f"deux sommets attendus, {len(tokens)} trouvé(s) : {line!r}",
                line_number)
        a, b = tokens
        if a == b:
            raise SelfLoopError(f"boucle sur le sommet {a!r}", line_number)
        for token in (a, b):
            if token not in labels:
                labels[token] = len(labels)
        edges.append((labels[a], labels[b]))

    if not labels:
        raise GraphParseError("liste d'arêtes vide")
    return ReliabilityGraph(len(labels), edges, labels)


def read_edge_list(path: Union[str, Path]) -> ReliabilityGraph:
    """Lit un fichier de liste d'arêtes."""
    with open(path, 'r', encoding='utf-8') as f:
        return parse_edge_list(f)


def write_edge_list(graph: ReliabilityGraph, path: Union[str, Path]):
    with open(path, 'w', encoding='utf-8') as f:
        f.write(graph.to_edge_list())


# ------------------------------------------------------------------ #
#  Graphes réguliers                                                  #
# ------------------------------------------------------------------ #

def grid_graph(rows: int, cols: int) -> ReliabilityGraph:
    """
    Grille rows × cols, voisins les plus proches.

    Sommets numérotés ligne par ligne ; arêtes : toutes les horizontales
    ligne par ligne, puis toutes les verticales ligne par ligne.
    """
    if rows < 1 or cols < 1:
        raise ParameterError("rows et cols doivent être ≥ 1")
    edges = []
    for r in range(rows):
        for c in range(cols - 1):
            v = r * cols + c
            edges.append((v, v + 1))
    for r in range(rows - 1):
        for c in range(cols):
            v = r * cols + c
            edges.append((v, v + cols))
    return ReliabilityGraph(rows * cols, edges)


def complete_graph(n: int) -> ReliabilityGraph:
    """Graphe complet K_n, arêtes dans l'ordre lexicographique."""
    edges = [(a, b) for a in range(n) for b in range(a + 1, n)]
    return ReliabilityGraph(n, edges)


def cycle_graph(n: int) -> ReliabilityGraph:
    """Cycle à n ≥ 3 sommets : arêtes (i, i+1 mod n)."""
    if n < 3:
        raise ParameterError("un cycle simple demande n ≥ 3")
    return ReliabilityGraph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> ReliabilityGraph:
    """Chemin à n sommets (n − 1 arêtes)."""
    return ReliabilityGraph(n, [(i, i + 1) for i in range(n - 1)])
