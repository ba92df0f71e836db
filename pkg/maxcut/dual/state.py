"""Dual solver state definitions."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from maxcut.config import settings
from maxcut.errors import InputError


class StopReason(str, Enum):
    """Why Algorithm 1 stopped."""

    GRADIENT = "gradient"  # ||d|| <= eps
    X_CHANGE = "x_change"  # relative change of x_bar <= eps
    SIGMA_CHANGE = "sigma_change"  # relative change of sigma <= eps
    MAX_ITERS = "max_iters"


@dataclass(frozen=True)
class PerturbationConfig:
    """Numerical parameters of one dual solve.

    alpha shifts the diagonal of Q and beta weights the quadratic penalty
    on sigma (switched off with penalized=False). delta_c is the linear
    shift already folded into the problem's c, kept for reporting.
    """

    alpha: np.ndarray
    beta: np.ndarray
    delta_c: Optional[np.ndarray] = None
    epsilon: float = settings.epsilon
    tau: float = settings.tau
    max_iters: int = settings.max_iters
    pd_margin: float = settings.pd_margin
    safety: float = settings.safety
    step_cap: float = settings.step_cap
    step_tol: float = settings.step_tol
    bisection_tol: float = settings.bisection_tol
    penalized: bool = True

    def __post_init__(self):
        alpha = np.array(self.alpha, dtype=float).reshape(-1)
        beta = np.array(self.beta, dtype=float).reshape(-1)
        n = alpha.shape[0]
        if beta.shape[0] != n:
            raise InputError(f"alpha has {n} entries but beta has {beta.shape[0]}")
        if not np.all(np.isfinite(alpha)):
            raise InputError("alpha must be finite")
        if not np.all(beta > 0) or not np.all(np.isfinite(beta)):
            raise InputError(f"beta must be positive and finite, got min {beta.min()}")
        delta_c = (
            np.zeros(n) if self.delta_c is None else np.array(self.delta_c, dtype=float).reshape(-1)
        )
        if delta_c.shape[0] != n:
            raise InputError(f"delta_c has {delta_c.shape[0]} entries, expected {n}")
        if self.epsilon <= 0:
            raise InputError(f"epsilon must be positive, got {self.epsilon}")
        if not 0 < self.tau < 0.5:
            raise InputError(f"tau must lie in (0, 0.5), got {self.tau}")
        if self.max_iters < 1:
            raise InputError(f"max_iters must be positive, got {self.max_iters}")
        for arr in (alpha, beta, delta_c):
            arr.setflags(write=False)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "delta_c", delta_c)

    @property
    def n(self) -> int:
        return self.alpha.shape[0]

    @property
    def inv_beta(self) -> np.ndarray:
        """1 / beta, or zeros when the quadratic penalty is switched off."""
        return 1.0 / self.beta if self.penalized else np.zeros_like(self.beta)

    @property
    def d_alpha(self) -> float:
        return 0.5 * float(self.alpha.sum())

    def echo(self) -> dict:
        """Plain-dict view for reports."""
        return {
            "alpha": self.alpha.tolist(),
            "beta": self.beta.tolist(),
            "delta_c": self.delta_c.tolist(),
            "epsilon": self.epsilon,
            "tau": self.tau,
            "max_iters": self.max_iters,
            "d_alpha": self.d_alpha,
            "penalized": self.penalized,
        }


@dataclass
class DualIterate:
    """One point of the dual ascent: sigma and everything derived from it."""

    sigma: np.ndarray
    x_bar: np.ndarray
    gradient: np.ndarray
    dual_value: float
    is_feasible: bool = True
    iteration: int = 0
    stop_reason: Optional[StopReason] = None
    history: list[float] = field(default_factory=list)

    @property
    def gradient_norm(self) -> float:
        return float(np.max(np.abs(self.gradient))) if self.gradient.size else 0.0
