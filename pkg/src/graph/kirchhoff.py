"""
kirchhoff.py — Nombre exact d'arbres couvrants (théorème matrice-arbre).

Le nombre d'arbres couvrants est n'importe quel cofacteur du laplacien.
Le déterminant est calculé par élimination de Bareiss (sans division
inexacte) sur des entiers de précision arbitraire via sympy.
"""

from typing import List

import sympy

from .multigraph import ReliabilityGraph


def laplacian(graph: ReliabilityGraph) -> List[List[int]]:
    """Laplacien entier ; une arête parallèle compte pour une unité de plus."""
    n = graph.vertex_count
    lap = [[0] * n for _ in range(n)]
    for a, b in graph.edges:
        lap[a][a] += 1
        lap[b][b] += 1
        lap[a][b] -= 1
        lap[b][a] -= 1
    return lap


def spanning_tree_count(graph: ReliabilityGraph) -> int:
    """
    Nombre d'arbres couvrants ; 0 si le graphe n'est pas connexe.
    """
    if graph.vertex_count == 1:
        return 1
    if not graph.is_connected():
        return 0
    lap = laplacian(graph)
    minor = sympy.Matrix([row[1:] for row in lap[1:]])
    return int(minor.det(method='bareiss'))
