"""Graph, primal problem and solution models."""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from pydantic import BaseModel, Field, model_validator

from maxcut.errors import InputError


class AlgorithmId(str, Enum):
    """Solvers that can produce a cut."""

    CDA1 = "CDA1"
    CDA2 = "CDA2"
    CDA3 = "CDA3"
    ORACLE = "ORACLE"


@dataclass(frozen=True)
class WeightedGraph:
    """Complete undirected graph stored as a dense symmetric weight matrix."""

    weights: np.ndarray
    name: str = "graph"

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise InputError(f"weights must be square, got shape {w.shape}")
        if w.shape[0] < 2:
            raise InputError(f"graph needs at least 2 vertices, got {w.shape[0]}")
        if not np.all(np.isfinite(w)):
            raise InputError(f"graph {self.name!r} has non-finite weights")
        if not np.array_equal(w, w.T):
            raise InputError(f"graph {self.name!r} weights are not symmetric")
        if np.any(np.diag(w) != 0.0):
            raise InputError(f"graph {self.name!r} has nonzero diagonal weights")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def num_vertices(self) -> int:
        return self.weights.shape[0]

    @property
    def total_edge_weight(self) -> float:
        """Sum of w_ij over unordered pairs i < j."""
        return float(np.triu(self.weights, k=1).sum())


@dataclass(frozen=True)
class PrimalProblem:
    """min 1/2 <x, Qx> - <x, c> over x in {-1, 1}^n.

    ``vertices`` lists the graph vertex behind each coordinate; ``pivot`` is
    the vertex fixed at +1. Reduced and perturbed problems keep the same
    bookkeeping so a solution can always be mapped back to a cut.
    """

    Q: np.ndarray
    c: np.ndarray
    pivot: int = -1
    total_edge_weight: float = 0.0
    vertices: tuple[int, ...] = field(default=())

    def __post_init__(self):
        Q = np.array(self.Q, dtype=float)
        c = np.array(self.c, dtype=float).reshape(-1)
        if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
            raise InputError(f"Q must be square, got shape {Q.shape}")
        if Q.shape[0] != c.shape[0]:
            raise InputError(f"Q is {Q.shape[0]}x{Q.shape[0]} but c has {c.shape[0]} entries")
        if Q.shape[0] < 1:
            raise InputError("primal problem needs at least one variable")
        if not np.array_equal(Q, Q.T):
            raise InputError("Q must be symmetric")
        if np.any(np.diag(Q) != 0.0):
            raise InputError("Q must have a zero diagonal")
        Q.setflags(write=False)
        c.setflags(write=False)
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "c", c)
        if not self.vertices:
            object.__setattr__(self, "vertices", tuple(range(Q.shape[0])))
        elif len(self.vertices) != Q.shape[0]:
            raise InputError(f"{len(self.vertices)} vertex labels for {Q.shape[0]} variables")

    @property
    def n(self) -> int:
        return self.Q.shape[0]

    def with_linear_shift(self, delta_c: np.ndarray) -> "PrimalProblem":
        """Same problem with c replaced by c + delta_c."""
        return PrimalProblem(
            Q=self.Q,
            c=self.c + np.asarray(delta_c, dtype=float),
            pivot=self.pivot,
            total_edge_weight=self.total_edge_weight,
            vertices=self.vertices,
        )


class CutSolution(BaseModel):
    """A bipartition: x over the primal variables, y over all vertices."""

    x: list[int]
    y: list[int]
    cut_weight: float
    primal_value: float
    certified_global: bool = False
    algorithm_id: AlgorithmId = AlgorithmId.CDA1
    pivot: int = Field(default=-1)

    @model_validator(mode="after")
    def _check_spins(self) -> "CutSolution":
        if any(v not in (-1, 1) for v in self.x) or any(v not in (-1, 1) for v in self.y):
            raise ValueError("solution entries must be -1 or +1")
        if len(self.y) != len(self.x) + 1:
            raise ValueError(f"y has {len(self.y)} entries, expected {len(self.x) + 1}")
        if self.y[self.pivot] != 1:
            raise ValueError("pivot vertex must be +1")
        return self
