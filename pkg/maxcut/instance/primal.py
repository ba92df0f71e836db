"""Cut objective and the graph -> (Q, c) primal conversion."""

from typing import Optional

import numpy as np

from maxcut.errors import InputError

from .models import AlgorithmId, CutSolution, PrimalProblem, WeightedGraph


def _spin_vector(values, length: int, what: str) -> np.ndarray:
    v = np.asarray(values, dtype=float).reshape(-1)
    if v.shape[0] != length:
        raise InputError(f"{what} has {v.shape[0]} entries, expected {length}")
    if not np.all(np.abs(v) == 1.0):
        raise InputError(f"{what} entries must be -1 or +1")
    return v


def normalize_pivot(graph: WeightedGraph, pivot: Optional[int]) -> int:
    """Resolve a (possibly negative or missing) pivot to a vertex index."""
    if pivot is None:
        return graph.num_vertices - 1
    if not -graph.num_vertices <= pivot < graph.num_vertices:
        raise InputError(f"pivot {pivot} out of range for {graph.num_vertices} vertices")
    return pivot % graph.num_vertices


def build_primal(graph: WeightedGraph, pivot: Optional[int] = None) -> PrimalProblem:
    """Fix ``pivot`` at +1 and return the equivalent n-variable primal problem.

    Q_ij = w_ij over the remaining vertices (original order) and
    c_i = -w_{i,pivot}. The pivot defaults to the last vertex.
    """
    p = normalize_pivot(graph, pivot)
    keep = [v for v in range(graph.num_vertices) if v != p]
    W = graph.weights
    return PrimalProblem(
        Q=W[np.ix_(keep, keep)],
        c=-W[keep, p],
        pivot=p,
        total_edge_weight=graph.total_edge_weight,
        vertices=tuple(keep),
    )


def cut_value(graph: WeightedGraph, y) -> float:
    """W(y) = 1/4 sum_ij w_ij (1 - y_i y_j): total weight crossing the bipartition."""
    spins = _spin_vector(y, graph.num_vertices, "y")
    W = graph.weights
    return float(0.25 * (W.sum() - spins @ W @ spins))


def primal_value(prob: PrimalProblem, x) -> float:
    """P(x) = 1/2 <x, Qx> - <x, c>. Real-valued x is accepted."""
    v = np.asarray(x, dtype=float).reshape(-1)
    if v.shape[0] != prob.n:
        raise InputError(f"x has {v.shape[0]} entries, problem has {prob.n} variables")
    return float(0.5 * v @ prob.Q @ v - v @ prob.c)


def perturbed_primal_value(prob: PrimalProblem, alpha, x) -> float:
    """P_alpha(x) = 1/2 <x, (Q + Diag(alpha)) x> - <x, c> - d_alpha.

    Equal to primal_value on {-1, 1}^n for every alpha.
    """
    v = np.asarray(x, dtype=float).reshape(-1)
    a = np.asarray(alpha, dtype=float).reshape(-1)
    if v.shape[0] != prob.n or a.shape[0] != prob.n:
        raise InputError(f"x and alpha must have {prob.n} entries")
    d_alpha = 0.5 * a.sum()
    return float(0.5 * v @ prob.Q @ v + 0.5 * a @ (v * v) - v @ prob.c - d_alpha)


def cut_from_x(prob: PrimalProblem, x) -> float:
    """Cut weight of the bipartition encoded by x: (T - P(x)) / 2."""
    spins = _spin_vector(x, prob.n, "x")
    return (prob.total_edge_weight - primal_value(prob, spins)) / 2.0


def extend_to_cut(prob: PrimalProblem, x) -> np.ndarray:
    """Place x on its vertices and the pivot at +1."""
    spins = _spin_vector(x, prob.n, "x")
    y = np.ones(prob.n + 1)
    y[list(prob.vertices)] = spins
    return y


def make_solution(
    graph: WeightedGraph,
    prob: PrimalProblem,
    x,
    algorithm_id: AlgorithmId,
    certified_global: bool = False,
) -> CutSolution:
    """Package x as a CutSolution with the cut measured on ``graph``."""
    spins = _spin_vector(x, prob.n, "x")
    y = extend_to_cut(prob, spins)
    return CutSolution(
        x=[int(v) for v in spins],
        y=[int(v) for v in y],
        cut_weight=cut_value(graph, y),
        primal_value=primal_value(prob, spins),
        certified_global=certified_global,
        algorithm_id=algorithm_id,
        pivot=prob.pivot,
    )


def solution_from_primal(
    prob: PrimalProblem,
    x,
    algorithm_id: AlgorithmId,
    certified_global: bool = False,
) -> CutSolution:
    """Package x without the graph; the cut weight comes from (T - P(x)) / 2."""
    spins = _spin_vector(x, prob.n, "x")
    y = extend_to_cut(prob, spins)
    return CutSolution(
        x=[int(v) for v in spins],
        y=[int(v) for v in y],
        cut_weight=cut_from_x(prob, spins),
        primal_value=primal_value(prob, spins),
        certified_global=certified_global,
        algorithm_id=algorithm_id,
        pivot=prob.pivot,
    )
