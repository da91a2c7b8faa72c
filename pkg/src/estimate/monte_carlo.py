"""
monte_carlo.py — Estimation de P_k par tirage de k-sous-ensembles d'arêtes.

Pour chaque k, n sous-ensembles uniformes de k arêtes sont tirés par
Fisher–Yates partiel creux (vectorisé sur un bloc de tirages, min(k, E − k)
arêtes tirées par ligne), puis la règle est évaluée sur chacun. p̂_k = acceptés / n, erreur type √(p̂(1 − p̂)/n).

Générateur : numpy Philox (compteur), un flux par (graine, k, bloc) via
SeedSequence([seed, k, bloc]). Les blocs ont une taille fixe, donc le
résultat ne dépend pas du nombre de workers.
"""

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb
from pathlib import Path
from typing import Iterable, List, NamedTuple, Optional, Tuple

import numpy as np
from tqdm import tqdm

from ..errors import ParameterError
from ..graph.kirchhoff import spanning_tree_count
from ..graph.multigraph import ReliabilityGraph
from ..rules.rule_spec import RuleSpec

DEFAULT_BLOCK_SIZE = 4096


@dataclass(frozen=True)
class McEstimate:
    """
    Estimation de P_k pour k = 0..E.

    Parameters
    ----------
    samples_per_k : n tirages par k (0 pour un k non estimé)
    p_hat         : fréquences d'acceptation
    std_err       : √(p̂(1 − p̂)/n)
    seed          : graine de départ
    block_size    : taille des blocs de tirages
    """

    samples_per_k: int
    p_hat: Tuple[float, ...]
    std_err: Tuple[float, ...]
    seed: int
    block_size: int = DEFAULT_BLOCK_SIZE
    accepted: Tuple[int, ...] = ()

    @property
    def edge_count(self) -> int:
        return len(self.p_hat) - 1

    def to_csv_rows(self) -> List[dict]:
        return [{'k': k, 'p_hat': p, 'std_err': s}
                for k, (p, s) in enumerate(zip(self.p_hat, self.std_err))]

    def write_csv(self, path):
        write_rows(self.to_csv_rows(), path, ['k', 'p_hat', 'std_err'])

    def to_dict(self) -> dict:
        return {
            'samples_per_k': self.samples_per_k,
            'seed': self.seed,
            'block_size': self.block_size,
            'p_hat': list(self.p_hat),
            'std_err': list(self.std_err),
        }


def write_rows(rows: List[dict], path, fieldnames: List[str]):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.DictWriter(f, fieldnames=fieldnames)
        writer.writeheader()
        writer.writerows(rows)


# ------------------------------------------------------------------ #
#  Tirages                                                            #
# ------------------------------------------------------------------ #

def _stream(seed: int, k: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, k, block])))


def sample_subsets(rng: np.random.Generator, edge_count: int, k: int, m: int) -> np.ndarray:
    """
    m sous-ensembles uniformes de k arêtes (lignes), par Fisher–Yates partiel.

    Seules les positions déplacées par un échange sont stockées (au plus k
    par ligne) : la mémoire est O(m·k), indépendante de edge_count. Les
    tirages sont ceux du mélange complet, à flux identique.
    """
    out = np.empty((m, k), dtype=np.int64)
    moved_pos = np.full((m, k), -1, dtype=np.int64)
    moved_val = np.zeros((m, k), dtype=np.int64)
    rows = np.arange(m)
    for i in range(k):
        j = rng.integers(i, edge_count, size=m)
        vj = _current_value(moved_pos[:, :i], moved_val[:, :i], rows, j)
        vi = _current_value(moved_pos[:, :i], moved_val[:, :i], rows, np.full(m, i))
        out[:, i] = vj
        # la position j reçoit l'ancienne valeur de la position i
        hit = moved_pos[:, :i] == j[:, None]
        found = hit.any(axis=1)
        col = hit.argmax(axis=1)
        moved_val[rows[found], col[found]] = vi[found]
        moved_pos[~found, i] = j[~found]
        moved_val[~found, i] = vi[~found]
    return out


def _current_value(pos: np.ndarray, val: np.ndarray, rows: np.ndarray,
                   where: np.ndarray) -> np.ndarray:
    if pos.shape[1] == 0:
        return where.copy()
    hit = pos == where[:, None]
    found = hit.any(axis=1)
    return np.where(found, val[rows, hit.argmax(axis=1)], where)


def _count_block(graph: ReliabilityGraph, rule: RuleSpec, k: int, m: int,
                 seed: int, block: int) -> int:
    E = graph.edge_count
    if k == 0 or k == E:
        mask = 0 if k == 0 else graph.full().mask
        return m if rule.accepts_mask(graph, mask) else 0
    # au-delà de E/2, on tire les arêtes absentes
    complement = k > E - k
    drawn = E - k if complement else k
    full = graph.full().mask
    subsets = sample_subsets(_stream(seed, k, block), E, drawn, m)
    accepted = 0
    for row in subsets:
        mask = 0
        for e in row.tolist():
            mask |= 1 << e
        if complement:
            mask ^= full
        if rule.accepts_mask(graph, mask):
            accepted += 1
    return accepted


def monte_carlo_pk(graph: ReliabilityGraph, rule: RuleSpec, samples_per_k: int,
                   seed: int = 0, threads: int = 1,
                   block_size: int = DEFAULT_BLOCK_SIZE,
                   ks: Optional[Iterable[int]] = None,
                   verbose: bool = False) -> McEstimate:
    """
    Estime P_k pour chaque k (ou pour les k demandés).

    Parameters
    ----------
    samples_per_k : n ≥ 1
    threads       : workers ; la réduction est une somme d'entiers
    ks            : sous-ensemble de tailles à estimer (les autres restent à 0)
    """
    if samples_per_k < 1:
        raise ParameterError("samples_per_k doit être ≥ 1")
    if block_size < 1:
        raise ParameterError("block_size doit être ≥ 1")
    rule.validate_for(graph)
    E = graph.edge_count
    ks = list(range(E + 1)) if ks is None else sorted(set(ks))
    for k in ks:
        if not 0 <= k <= E:
            raise ParameterError(f"k = {k} hors de [0, {E}]")

    tasks = []
    for k in ks:
        for block, start in enumerate(range(0, samples_per_k, block_size)):
            tasks.append((k, min(block_size, samples_per_k - start), block))

    def run(task):
        k, m, block = task
        return k, _count_block(graph, rule, k, m, seed, block)

    accepted = [0] * (E + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(tqdm(pool.map(run, tasks), total=len(tasks),
                                desc="[MonteCarlo] blocs", disable=not verbose))
    else:
        results = [run(t) for t in tqdm(tasks, desc="[MonteCarlo] blocs", disable=not verbose)]
    for k, count in results:
        accepted[k] += count

    n = samples_per_k
    estimated = set(ks)
    p_hat, std_err = [], []
    for k in range(E + 1):
        if k in estimated:
            p = accepted[k] / n
            p_hat.append(p)
            std_err.append(math.sqrt(p * (1 - p) / n))
        else:
            p_hat.append(0.0)
            std_err.append(0.0)

    if verbose:
        print(f"[MonteCarlo] {rule.label(graph)} : {n} tirages × {len(ks)} tailles "
              f"(graine {seed})")
    return McEstimate(n, tuple(p_hat), tuple(std_err), seed, block_size, tuple(accepted))


# ------------------------------------------------------------------ #
#  Nombre d'arbres couvrants                                          #
# ------------------------------------------------------------------ #

class SpanningTreeEstimate(NamedTuple):
    estimate: float
    std_err: float
    exact: int


def estimate_spanning_trees(graph: ReliabilityGraph, samples: int, seed: int = 0,
                            threads: int = 1, block_size: int = DEFAULT_BLOCK_SIZE,
                            verbose: bool = False) -> SpanningTreeEstimate:
    """τ(G) ≈ P̂_(V−1) · C(E, V − 1), à comparer au déterminant de Kirchhoff."""
    k = graph.vertex_count - 1
    if k > graph.edge_count:
        raise ParameterError("moins d'arêtes que V − 1 : aucun arbre couvrant")
    mc = monte_carlo_pk(graph, RuleSpec.all_terminal(), samples, seed=seed,
                        threads=threads, block_size=block_size, ks=[k], verbose=verbose)
    scale = comb(graph.edge_count, k)
    return SpanningTreeEstimate(mc.p_hat[k] * scale, mc.std_err[k] * scale,
                                spanning_tree_count(graph))
