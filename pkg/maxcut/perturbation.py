"""Choice of the quadratic (alpha, beta) and linear (delta_c) perturbations."""

import logging
from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field
from scipy.linalg import eigvalsh

from maxcut.config import settings
from maxcut.dual.core import is_negative_definite
from maxcut.dual.state import PerturbationConfig
from maxcut.errors import InputError, PreconditionError
from maxcut.instance.models import PrimalProblem

logger = logging.getLogger(__name__)


class AlphaMode(str, Enum):
    GERSHGORIN = "GERSHGORIN"
    SPECTRAL = "SPECTRAL"
    EXPLICIT = "EXPLICIT"


class BetaMode(str, Enum):
    CONSTANT = "CONSTANT"
    PROPORTIONAL = "PROPORTIONAL"
    EXPLICIT = "EXPLICIT"


class PerturbationPolicy(BaseModel):
    """How alpha, beta and delta_c are chosen, plus the dual solver tolerances."""

    alpha_mode: AlphaMode = AlphaMode(settings.alpha_mode)
    alpha_slack: float = Field(default=settings.alpha_slack, gt=0)
    beta_mode: BetaMode = BetaMode(settings.beta_mode)
    beta_scale: float = Field(default=settings.beta_scale, gt=0)
    linear_magnitude: float = Field(default=settings.linear_magnitude, ge=0)
    rng_seed: int = settings.rng_seed
    explicit_alpha: Optional[list[float]] = None
    explicit_beta: Optional[list[float]] = None

    epsilon: float = Field(default=settings.epsilon, gt=0)
    tau: float = Field(default=settings.tau, gt=0, lt=0.5)
    max_iters: int = Field(default=settings.max_iters, ge=1)
    fix_fraction: float = Field(default=settings.fix_fraction, ge=0, lt=1)
    reduced_max_iters: int = Field(default=settings.reduced_max_iters, ge=1)
    improve_tol: float = Field(default=settings.improve_tol, ge=0)
    pass_cap: int = Field(default=settings.pass_cap, ge=1)


def choose_alpha(Q: np.ndarray, policy: PerturbationPolicy) -> np.ndarray:
    """alpha with Q + Diag(alpha) < 0.

    GERSHGORIN makes -(Q + Diag(alpha)) strictly diagonally dominant,
    SPECTRAL shifts every diagonal entry by lambda_max(Q) + slack.
    """
    Q = np.asarray(Q, dtype=float)
    n = Q.shape[0]
    delta = policy.alpha_slack

    if policy.alpha_mode is AlphaMode.GERSHGORIN:
        return -(np.abs(Q).sum(axis=1) + delta)

    if policy.alpha_mode is AlphaMode.SPECTRAL:
        lam_max = float(eigvalsh(Q, subset_by_index=[n - 1, n - 1])[0]) if n > 1 else float(Q[0, 0])
        return np.full(n, -(lam_max + delta))

    if policy.explicit_alpha is None:
        raise InputError("alpha_mode EXPLICIT needs explicit_alpha")
    alpha = np.asarray(policy.explicit_alpha, dtype=float)
    if alpha.shape != (n,):
        raise InputError(f"explicit_alpha has {alpha.shape[0]} entries, expected {n}")
    if not is_negative_definite(Q, alpha):
        raise PreconditionError("explicit alpha does not make Q + Diag(alpha) negative definite")
    return alpha


def choose_beta(alpha: np.ndarray, policy: PerturbationPolicy) -> np.ndarray:
    """Penalty weights beta > 0."""
    alpha = np.asarray(alpha, dtype=float)
    if not np.all(np.isfinite(alpha)):
        raise InputError("alpha must be finite")

    if policy.beta_mode is BetaMode.CONSTANT:
        beta = np.full(alpha.shape[0], policy.beta_scale)
    elif policy.beta_mode is BetaMode.PROPORTIONAL:
        beta = policy.beta_scale * np.abs(alpha)
    else:
        if policy.explicit_beta is None:
            raise InputError("beta_mode EXPLICIT needs explicit_beta")
        beta = np.asarray(policy.explicit_beta, dtype=float)
        if beta.shape != alpha.shape:
            raise InputError(
                f"explicit_beta has {beta.shape[0]} entries, expected {alpha.shape[0]}"
            )

    if not np.all(beta > 0):
        raise InputError(f"beta entries must be positive, got min {beta.min()}")
    return beta


def make_linear_perturbation(n: int, policy: PerturbationPolicy) -> np.ndarray:
    """Seeded delta_c with sum |delta_c_i| == linear_magnitude."""
    s = policy.linear_magnitude
    if s == 0.0:
        return np.zeros(n)
    rng = np.random.default_rng(policy.rng_seed)
    raw = rng.uniform(-1.0, 1.0, size=n)
    total = np.abs(raw).sum()
    if total == 0.0:
        raw = np.ones(n)
        total = float(n)
    return raw * (s / total)


def linear_bound(linear_magnitude: float, cut_weight: float) -> tuple[float, float]:
    """Ratio s / W(x) and the guaranteed fraction 1 / (1 + ratio) of the optimum.

    Only meaningful when s >= 1; below that the perturbed optimum is exact.
    """
    if cut_weight <= 0:
        return float("inf"), 0.0
    ratio = linear_magnitude / cut_weight
    return ratio, 1.0 / (1.0 + ratio)


def build_config(
    prob: PrimalProblem,
    policy: PerturbationPolicy,
    delta_c: Optional[np.ndarray] = None,
    penalized: bool = True,
) -> PerturbationConfig:
    """PerturbationConfig for ``prob`` with alpha and beta chosen by ``policy``."""
    alpha = choose_alpha(prob.Q, policy)
    beta = choose_beta(alpha, policy)
    logger.debug(
        "config for n=%d: alpha in [%.4g, %.4g], beta in [%.4g, %.4g]",
        prob.n, alpha.min(), alpha.max(), beta.min(), beta.max(),
    )
    return PerturbationConfig(
        alpha=alpha,
        beta=beta,
        delta_c=delta_c,
        epsilon=policy.epsilon,
        tau=policy.tau,
        max_iters=policy.max_iters,
        penalized=penalized,
    )
