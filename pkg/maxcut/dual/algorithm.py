"""Gradient ascent on the beta-perturbed canonical dual (Algorithm 1)."""

import logging
from typing import Callable, Optional

import numpy as np

from maxcut.errors import DualInfeasibleError, InputError, SolverError
from maxcut.instance.models import PrimalProblem

from .core import default_sigma0, dual_value, evaluate, max_step
from .line_search import golden_section
from .state import DualIterate, PerturbationConfig, StopReason

logger = logging.getLogger(__name__)

# Halvings tried when the golden-section step fails to raise the dual value
MAX_BACKTRACKS = 40


def round_spins(x_bar: np.ndarray) -> np.ndarray:
    """Nearest of {-1, +1} per entry; zeros go to +1."""
    return np.where(np.asarray(x_bar) < 0, -1.0, 1.0)


def _relative_change(new: np.ndarray, old: np.ndarray) -> float:
    return float(np.max(np.abs(new - old) / np.maximum(np.abs(old), 1.0)))


def _ascent_step(
    prob: PrimalProblem, cfg: PerturbationConfig, current: DualIterate
) -> float:
    sigma, d = current.sigma, current.gradient
    a_max = max_step(prob, cfg, sigma, d)
    if a_max <= 0.0:
        return 0.0

    def along_ray(a: float) -> float:
        return dual_value(prob, cfg, sigma + a * d)

    step = golden_section(along_ray, 0.0, a_max, tol=max(cfg.step_tol * a_max, 1e-15))
    for _ in range(MAX_BACKTRACKS):
        if along_ray(step) >= current.dual_value:
            return step
        step *= 0.5
    return 0.0


def algorithm1(
    prob: PrimalProblem,
    cfg: PerturbationConfig,
    sigma0: Optional[np.ndarray] = None,
    progress_callback: Optional[Callable[[DualIterate], None]] = None,
) -> tuple[DualIterate, np.ndarray]:
    """
    Maximize the beta-perturbed dual from sigma0 and round the primal point.

    Stops on ||d||_inf <= eps, on a relative change of x_bar or sigma
    below eps, or after cfg.max_iters steps.

    Returns:
        Tuple of (final iterate, x_star in {-1, 1}^n)
    """
    if cfg.n != prob.n:
        raise InputError(f"config has {cfg.n} entries for a {prob.n}-variable problem")
    start = default_sigma0(prob, cfg) if sigma0 is None else np.asarray(sigma0, dtype=float)

    try:
        current = evaluate(prob, cfg, start)
    except DualInfeasibleError as e:
        raise InputError("initial sigma is outside the dual feasible domain") from e
    current.history.append(current.dual_value)

    reason = StopReason.MAX_ITERS
    for k in range(cfg.max_iters):
        if current.gradient_norm <= cfg.epsilon:
            reason = StopReason.GRADIENT
            break

        step = _ascent_step(prob, cfg, current)
        try:
            nxt = evaluate(prob, cfg, current.sigma + step * current.gradient, iteration=k + 1)
        except DualInfeasibleError as e:
            raise SolverError(f"iterate left S+_alpha at iteration {k + 1}") from e
        nxt.history = current.history
        nxt.history.append(nxt.dual_value)

        dx = _relative_change(nxt.x_bar, current.x_bar)
        ds = _relative_change(nxt.sigma, current.sigma)
        logger.debug(
            "iter %d: step=%.3e dual=%.10g |d|=%.3e dx=%.3e ds=%.3e",
            k + 1, step, nxt.dual_value, nxt.gradient_norm, dx, ds,
        )
        current = nxt
        if progress_callback:
            progress_callback(current)

        if current.gradient_norm <= cfg.epsilon:
            reason = StopReason.GRADIENT
            break
        if dx <= cfg.epsilon:
            reason = StopReason.X_CHANGE
            break
        if ds <= cfg.epsilon:
            reason = StopReason.SIGMA_CHANGE
            break

    current.stop_reason = reason
    logger.info(
        "algorithm1 stopped after %d iterations (%s), |d|=%.3e",
        current.iteration, reason.value, current.gradient_norm,
    )
    return current, round_spins(current.x_bar)
