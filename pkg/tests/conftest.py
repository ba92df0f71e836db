"""Shared fixtures: the 9-variable worked example, random instances, TSPLIB text."""

from pathlib import Path

import numpy as np
import pytest

from maxcut.config import settings
from maxcut.instance import PrimalProblem, WeightedGraph

EXAMPLE_Q = np.array(
    [
        [0, 6, 4, 8, 4, 5, 5, 6, 8],
        [6, 0, 3, 9, 4, 5, 5, 8, 7],
        [4, 3, 0, 6, 2, 4, 7, 5, 4],
        [8, 9, 6, 0, 7, 4, 7, 6, 6],
        [4, 4, 2, 7, 0, 7, 5, 4, 6],
        [5, 5, 4, 4, 7, 0, 0, 2, 7],
        [5, 5, 7, 7, 5, 0, 0, 4, 5],
        [6, 8, 5, 6, 4, 2, 4, 0, 2],
        [8, 7, 4, 6, 6, 7, 5, 2, 0],
    ],
    dtype=float,
)
EXAMPLE_C = np.array([2, 5, 3, 5, 2, 5, 4, 5, 7], dtype=float)
EXAMPLE_ALPHA = np.array(
    [-17.3208, -2.8050, -36.5410, -1.1174, -38.3706, -77.0470, -20.1651, -31.3002, -34.9461]
)
EXAMPLE_BETA = np.array(
    [605.7162, 601.1675, 330.2360, 277.4284, 674.9582, 540.0750, 537.7345, 690.3018, 371.8627]
)
EXAMPLE_SIGMA = np.array(
    [34.0286, 19.9327, 50.1747, 12.6699, 55.9428, 88.7105, 30.2908, 45.0242, 45.6742]
)
EXAMPLE_X = np.array([1, 1, 1, -1, 1, -1, -1, -1, -1], dtype=float)

TSPLIB_DIR = settings.data_dir


def tsplib_file(name: str) -> Path:
    return TSPLIB_DIR / f"{name}.tsp"


def requires_tsplib(*names: str):
    """Skip unless every named instance is present under data/tsplib."""
    missing = [n for n in names if not tsplib_file(n).exists()]
    return pytest.mark.skipif(bool(missing), reason=f"TSPLIB files missing: {', '.join(missing)}")


def random_graph(
    rng: np.random.Generator, vertices: int, low: int = 1, high: int = 10
) -> WeightedGraph:
    """Complete graph with integer weights in [low, high]."""
    upper = np.triu(rng.integers(low, high + 1, size=(vertices, vertices)), k=1).astype(float)
    return WeightedGraph(weights=upper + upper.T, name=f"random{vertices}")


def random_problem(rng: np.random.Generator, n: int) -> PrimalProblem:
    """Primal problem with symmetric integer Q (zero diagonal) and integer c."""
    upper = np.triu(rng.integers(-10, 11, size=(n, n)), k=1).astype(float)
    c = rng.integers(-10, 11, size=n).astype(float)
    return PrimalProblem(Q=upper + upper.T, c=c)


@pytest.fixture
def example_problem() -> PrimalProblem:
    return PrimalProblem(Q=EXAMPLE_Q, c=EXAMPLE_C)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def triangle() -> WeightedGraph:
    """Weights 1, 2, 3; the best cut isolates vertex 2 (edges 2 and 3, weight 5)."""
    W = np.array([[0, 1, 2], [1, 0, 3], [2, 3, 0]], dtype=float)
    return WeightedGraph(weights=W, name="triangle")


@pytest.fixture
def two_vertex() -> WeightedGraph:
    return WeightedGraph(weights=np.array([[0.0, 5.0], [5.0, 0.0]]), name="edge")


@pytest.fixture
def euc2d_text() -> str:
    return "\n".join(
        [
            "NAME : rect4",
            "COMMENT : 3 by 4 rectangle",
            "TYPE : TSP",
            "DIMENSION : 4",
            "EDGE_WEIGHT_TYPE : EUC_2D",
            "NODE_COORD_SECTION",
            "1 0 0",
            "2 3 0",
            "3 3 4",
            "4 0 4",
            "EOF",
            "",
        ]
    )


@pytest.fixture
def upper_row_text() -> str:
    return "\n".join(
        [
            "NAME: tiny4",
            "TYPE: TSP",
            "DIMENSION: 4",
            "EDGE_WEIGHT_TYPE: EXPLICIT",
            "EDGE_WEIGHT_FORMAT: UPPER_ROW",
            "EDGE_WEIGHT_SECTION",
            " 1 2 3",
            " 4 5",
            " 6",
            "EOF",
            "",
        ]
    )
