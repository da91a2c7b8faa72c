"""
brute_force.py — R_k par parcours des 2^E sous-graphes (oracle de référence).
"""

from collections import Counter
from concurrent.futures import ThreadPoolExecutor

from tqdm import tqdm

from ..errors import CapacityError
from ..graph.multigraph import ReliabilityGraph
from ..poly.coefficients import CoefficientVector
from ..rules.rule_spec import RuleSpec

BRUTE_FORCE_EDGE_CAP = 25
CHUNK_BITS = 12


def _count_chunk(graph: ReliabilityGraph, rule: RuleSpec, start: int, stop: int) -> Counter:
    counts: Counter = Counter()
    for mask in range(start, stop):
        if rule.accepts_mask(graph, mask):
            counts[mask.bit_count()] += 1
    return counts


def brute_force_rk(graph: ReliabilityGraph, rule: RuleSpec,
                   cap: int = BRUTE_FORCE_EDGE_CAP, threads: int = 1,
                   verbose: bool = False) -> CoefficientVector:
    """
    R_k = nombre de sous-graphes acceptés à k arêtes.

    Parameters
    ----------
    cap     : E maximal (2^E sous-graphes)
    threads : nombre de workers ; les comptes partiels s'additionnent
    """
    rule.validate_for(graph)
    E = graph.edge_count
    if E > cap:
        raise CapacityError(f"force brute limitée à E ≤ {cap} (E = {E})")

    total = 1 << E
    step = 1 << min(CHUNK_BITS, E)
    chunks = [(lo, min(lo + step, total)) for lo in range(0, total, step)]

    counts: Counter = Counter()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = pool.map(lambda c: _count_chunk(graph, rule, *c), chunks)
            for part in tqdm(parts, total=len(chunks), desc="[Brute] sous-graphes",
                             disable=not verbose):
                counts.update(part)
    else:
        for lo, hi in tqdm(chunks, desc="[Brute] sous-graphes", disable=not verbose):
            counts.update(_count_chunk(graph, rule, lo, hi))

    return CoefficientVector('Rk', E, tuple(counts.get(k, 0) for k in range(E + 1)))
