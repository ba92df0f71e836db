"""Graph and primal-problem data model."""

from .models import AlgorithmId, CutSolution, PrimalProblem, WeightedGraph
from .primal import (
    build_primal,
    cut_from_x,
    cut_value,
    extend_to_cut,
    make_solution,
    perturbed_primal_value,
    primal_value,
    solution_from_primal,
)

__all__ = [
    "AlgorithmId",
    "CutSolution",
    "PrimalProblem",
    "WeightedGraph",
    "build_primal",
    "cut_from_x",
    "cut_value",
    "extend_to_cut",
    "make_solution",
    "perturbed_primal_value",
    "primal_value",
    "solution_from_primal",
]
