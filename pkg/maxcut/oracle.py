"""Exact brute-force max-cut for verification at desk scale.

The 2^n assignments are split into an inner block of the first k
variables, evaluated all at once as a table, and the remaining outer
variables, walked in Gray-code order with O(n) incremental updates per flip.
"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Iterator, Optional

import numpy as np

from maxcut.config import settings
from maxcut.errors import SizeLimitError
from maxcut.instance.models import AlgorithmId, CutSolution, PrimalProblem, WeightedGraph
from maxcut.instance.primal import build_primal, make_solution

logger = logging.getLogger(__name__)

INNER_BITS = 16
ENUMERATE_LIMIT = 20


def _spins_from_code(code: int, n: int) -> np.ndarray:
    # bit i set <=> x_i = -1
    bits = (code >> np.arange(n)) & 1
    return 1.0 - 2.0 * bits


def _inner_table(prob: PrimalProblem, k: int) -> tuple[np.ndarray, np.ndarray]:
    """All 2^k inner assignments and their share of P."""
    codes = np.arange(2**k)[:, None]
    XL = 1.0 - 2.0 * ((codes >> np.arange(k)) & 1)
    QLL = prob.Q[:k, :k]
    base = 0.5 * np.sum((XL @ QLL) * XL, axis=1) - XL @ prob.c[:k]
    return XL, base


def _walk(
    prob: PrimalProblem, XL: np.ndarray, base: np.ndarray, prefix: int, prefix_bits: int
) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (outer code, P over the inner block) for every outer assignment under ``prefix``."""
    k = XL.shape[1]
    m = prob.n - k
    free = m - prefix_bits

    xH = np.ones(m)
    for j in range(free, m):
        if (prefix >> (j - free)) & 1:
            xH[j] = -1.0

    QLH = prob.Q[:k, k:]
    QHH = prob.Q[k:, k:]
    cH = prob.c[k:]
    h = QLH @ xH
    qh = QHH @ xH
    const = 0.5 * float(xH @ qh) - float(cH @ xH)
    code = prefix << free
    yield code, base + XL @ h + const

    for step in range(1, 2**free):
        j = (step & -step).bit_length() - 1
        old = xH[j]
        const += -2.0 * old * (qh[j] - QHH[j, j] * old - cH[j])
        h -= 2.0 * old * QLH[:, j]
        qh -= 2.0 * old * QHH[:, j]
        xH[j] = -old
        code ^= 1 << j
        yield code, base + XL @ h + const


def enumerate_primal_values(prob: PrimalProblem) -> np.ndarray:
    """P(x) for every x, indexed by the binary code of x (bit i set <=> x_i = -1)."""
    if prob.n > ENUMERATE_LIMIT:
        raise SizeLimitError(f"refusing to tabulate 2^{prob.n} values")
    k = min(prob.n, INNER_BITS)
    XL, base = _inner_table(prob, k)
    values = np.empty(2**prob.n)
    inner = np.arange(2**k)
    for code, vals in _walk(prob, XL, base, 0, 0):
        values[(code << k) + inner] = vals
    return values


def _search_prefix(
    prob: PrimalProblem, XL: np.ndarray, base: np.ndarray, prefix: int, prefix_bits: int
) -> tuple[float, int]:
    k = XL.shape[1]
    best_value, best_index = np.inf, -1
    for code, vals in _walk(prob, XL, base, prefix, prefix_bits):
        i = int(np.argmin(vals))
        index = (code << k) + i
        if vals[i] < best_value or (vals[i] == best_value and index < best_index):
            best_value, best_index = float(vals[i]), index
    return best_value, best_index


def brute_force_primal(
    prob: PrimalProblem, workers: Optional[int] = None
) -> tuple[np.ndarray, float]:
    """Exact minimizer of P over {-1, 1}^n.

    The outer walk is partitioned across ``workers`` threads by fixing its
    leading bits; partial minima are merged by (value, code).
    """
    k = min(prob.n, INNER_BITS)
    m = prob.n - k
    XL, base = _inner_table(prob, k)

    workers = workers or os.cpu_count() or 1
    prefix_bits = min(m, max(0, (workers - 1).bit_length()))
    prefixes = range(2**prefix_bits)

    if len(prefixes) == 1:
        results = [_search_prefix(prob, XL, base, 0, 0)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(
                executor.map(lambda p: _search_prefix(prob, XL, base, p, prefix_bits), prefixes)
            )

    value, index = min(results)
    return _spins_from_code(index, prob.n), value


def brute_force_maxcut(
    graph: WeightedGraph,
    limit: int = settings.oracle_limit,
    workers: Optional[int] = None,
) -> CutSolution:
    """Maximum cut of ``graph`` by exhaustive enumeration with the last vertex fixed."""
    if graph.num_vertices > limit:
        raise SizeLimitError(
            f"oracle limited to {limit} vertices, {graph.name} has {graph.num_vertices}"
        )
    prob = build_primal(graph)
    logger.info("oracle: enumerating 2^%d assignments for %s", prob.n, graph.name)
    x, _ = brute_force_primal(prob, workers=workers)
    return make_solution(graph, prob, x, AlgorithmId.ORACLE, certified_global=True)
