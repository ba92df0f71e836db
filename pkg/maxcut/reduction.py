"""Reduction technique: fix near-binary coordinates, re-solve the rest.

x = x_p + N x_h, with N never materialized: ``free_indices`` are the
columns of N and the reduced data are gathered by index.
"""

from dataclasses import dataclass

import numpy as np

from maxcut.errors import InputError
from maxcut.instance.models import PrimalProblem


@dataclass(frozen=True)
class ReductionStep:
    """One fix-and-reduce step over a parent problem."""

    fixed_values: np.ndarray
    free_indices: list[int]
    reduced_problem: PrimalProblem
    constant: float = 0.0

    @property
    def m(self) -> int:
        return len(self.free_indices)


def split_feasible(x_bar, tau: float, min_fixed: int = 1) -> tuple[np.ndarray, list[int]]:
    """Fix every coordinate with ||x_bar_i| - 1| <= tau to sign(x_bar_i).

    When fewer than ``min_fixed`` qualify, the closest remaining ones are
    fixed as well, so the free set always shrinks. With the default of one
    that is the single closest coordinate.
    """
    if not 0 < tau < 0.5:
        raise InputError(f"tau must lie in (0, 0.5), got {tau}")
    if min_fixed < 1:
        raise InputError(f"min_fixed must be at least 1, got {min_fixed}")
    x = np.asarray(x_bar, dtype=float).reshape(-1)
    distance = np.abs(np.abs(x) - 1.0)
    feasible = distance <= tau
    shortfall = min(min_fixed, x.shape[0]) - int(feasible.sum())
    if shortfall > 0:
        # stable sort keeps the lowest index first among equal distances
        order = np.argsort(np.where(feasible, np.inf, distance), kind="stable")
        feasible[order[:shortfall]] = True
    fixed = np.where(feasible, np.where(x < 0, -1.0, 1.0), 0.0)
    free = [int(i) for i in np.flatnonzero(~feasible)]
    return fixed, free


def reduce_problem(parent: PrimalProblem, fixed_values, free_indices: list[int]) -> ReductionStep:
    """Q_h = N^T Q N and c_h = N^T c - N^T Q x_p over the free coordinates."""
    if not free_indices:
        raise InputError("nothing to reduce: every coordinate is fixed")
    x_p = np.asarray(fixed_values, dtype=float).reshape(-1)
    if x_p.shape[0] != parent.n:
        raise InputError(f"fixed_values has {x_p.shape[0]} entries, expected {parent.n}")
    free = list(free_indices)
    if np.any(x_p[free] != 0.0) or np.count_nonzero(x_p) != parent.n - len(free):
        raise InputError("fixed_values must be zero exactly on free_indices and +-1 elsewhere")

    Qx_p = parent.Q @ x_p
    reduced = PrimalProblem(
        Q=parent.Q[np.ix_(free, free)],
        c=parent.c[free] - Qx_p[free],
        pivot=parent.pivot,
        total_edge_weight=parent.total_edge_weight,
        vertices=tuple(parent.vertices[i] for i in free),
    )
    constant = float(0.5 * x_p @ Qx_p - parent.c @ x_p)
    return ReductionStep(
        fixed_values=x_p, free_indices=free, reduced_problem=reduced, constant=constant
    )


def lift_solution(fixed_values, free_indices: list[int], x_h) -> np.ndarray:
    """x = x_p + N x_h."""
    x = np.array(fixed_values, dtype=float).reshape(-1)
    h = np.asarray(x_h, dtype=float).reshape(-1)
    if h.shape[0] != len(free_indices):
        raise InputError(f"x_h has {h.shape[0]} entries for {len(free_indices)} free indices")
    x[list(free_indices)] = h
    return x
