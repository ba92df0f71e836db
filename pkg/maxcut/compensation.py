"""Compensation technique: single bit-flip improvement of a +-1 solution."""

import logging

import numpy as np

from maxcut.config import settings
from maxcut.instance.models import PrimalProblem

logger = logging.getLogger(__name__)


def flip_delta(prob: PrimalProblem, x, i: int, Qx=None) -> float:
    """P(x with x_i negated) - P(x) = -2 x_i ((Qx)_i - Q_ii x_i - c_i)."""
    x = np.asarray(x, dtype=float)
    qx_i = float(prob.Q[i] @ x) if Qx is None else float(Qx[i])
    return -2.0 * x[i] * (qx_i - prob.Q[i, i] * x[i] - prob.c[i])


def compensate_counted(
    prob: PrimalProblem,
    x,
    improve_tol: float = settings.improve_tol,
    pass_cap: int = settings.pass_cap,
) -> tuple[np.ndarray, int]:
    """
    Flip coordinates in order 1..n while a flip lowers P by more than
    improve_tol; repeat passes until one accepts nothing.

    Returns:
        Tuple of (improved x, number of passes run)
    """
    x = np.array(x, dtype=float).reshape(-1)
    Qx = prob.Q @ x
    passes = 0
    while passes < pass_cap:
        passes += 1
        improved = False
        for i in range(prob.n):
            if flip_delta(prob, x, i, Qx) < -improve_tol:
                Qx -= 2.0 * x[i] * prob.Q[:, i]
                x[i] = -x[i]
                improved = True
        if not improved:
            break
    logger.debug("compensation finished after %d passes", passes)
    return x, passes


def compensate(
    prob: PrimalProblem,
    x,
    improve_tol: float = settings.improve_tol,
    pass_cap: int = settings.pass_cap,
) -> np.ndarray:
    """1-flip local optimum reached from x; P never increases."""
    return compensate_counted(prob, x, improve_tol, pass_cap)[0]
