"""beta-perturbed canonical dual function, gradient and feasibility tests.

Everything here works through a Cholesky factorization of
G_alpha(sigma) = Q + Diag(alpha + sigma); no inverse is ever formed.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from maxcut.errors import DualInfeasibleError
from maxcut.instance.models import PrimalProblem

from .state import DualIterate, PerturbationConfig

logger = logging.getLogger(__name__)


def _cholesky(G: np.ndarray, pd_margin: float):
    """Lower Cholesky factor of G, or None unless every pivot exceeds pd_margin."""
    try:
        factor = cho_factor(G, lower=True, check_finite=True)
    except (LinAlgError, ValueError):
        return None
    if np.any(np.diag(factor[0]) ** 2 <= pd_margin):
        return None
    return factor


def g_matrix(prob: PrimalProblem, cfg: PerturbationConfig, sigma) -> np.ndarray:
    """G_alpha(sigma) = Q + Diag(alpha + sigma)."""
    return prob.Q + np.diag(cfg.alpha + np.asarray(sigma, dtype=float))


def is_dual_feasible(prob: PrimalProblem, cfg: PerturbationConfig, sigma) -> bool:
    """True iff sigma lies in S+_alpha, i.e. G_alpha(sigma) is positive definite."""
    return _cholesky(g_matrix(prob, cfg, sigma), cfg.pd_margin) is not None


def is_negative_definite(Q: np.ndarray, alpha, pd_margin: float = 1e-10) -> bool:
    """Q + Diag(alpha) < 0, checked by factoring its negation."""
    return _cholesky(-(Q + np.diag(np.asarray(alpha, dtype=float))), pd_margin) is not None


def _factor_or_raise(prob: PrimalProblem, cfg: PerturbationConfig, sigma: np.ndarray):
    factor = _cholesky(g_matrix(prob, cfg, sigma), cfg.pd_margin)
    if factor is None:
        raise DualInfeasibleError("G_alpha(sigma) is not positive definite")
    return factor


def _penalty(cfg: PerturbationConfig, sigma: np.ndarray) -> float:
    return 0.5 * float(np.sum(sigma * sigma * cfg.inv_beta + sigma))


def evaluate(
    prob: PrimalProblem, cfg: PerturbationConfig, sigma, iteration: int = 0
) -> DualIterate:
    """x_bar, gradient and dual value at sigma from a single factorization."""
    s = np.asarray(sigma, dtype=float).reshape(-1)
    factor = _factor_or_raise(prob, cfg, s)
    x_bar = cho_solve(factor, prob.c)
    value = -0.5 * float(prob.c @ x_bar) - _penalty(cfg, s) - cfg.d_alpha
    gradient = 0.5 * x_bar * x_bar - s * cfg.inv_beta - 0.5
    return DualIterate(
        sigma=s,
        x_bar=x_bar,
        gradient=gradient,
        dual_value=value,
        is_feasible=True,
        iteration=iteration,
    )


def dual_value(prob: PrimalProblem, cfg: PerturbationConfig, sigma) -> float:
    """P^d_ab(sigma) = -1/2 <G^-1 c, c> - 1/2 sum(sigma^2/beta + sigma) - d_alpha."""
    s = np.asarray(sigma, dtype=float).reshape(-1)
    factor = _factor_or_raise(prob, cfg, s)
    return -0.5 * float(prob.c @ cho_solve(factor, prob.c)) - _penalty(cfg, s) - cfg.d_alpha


def alpha_dual_value(prob: PrimalProblem, cfg: PerturbationConfig, sigma) -> float:
    """Unpenalized alpha-dual (beta -> infinity); a lower bound on P over {-1, 1}^n."""
    s = np.asarray(sigma, dtype=float).reshape(-1)
    factor = _factor_or_raise(prob, cfg, s)
    return -0.5 * float(prob.c @ cho_solve(factor, prob.c)) - 0.5 * float(s.sum()) - cfg.d_alpha


def dual_gradient(prob: PrimalProblem, cfg: PerturbationConfig, sigma) -> np.ndarray:
    """d = 1/2 x_bar o x_bar - sigma / beta - 1/2 e with x_bar = G^-1 c."""
    return evaluate(prob, cfg, sigma).gradient


def default_sigma0(prob: PrimalProblem, cfg: PerturbationConfig) -> np.ndarray:
    """Starting point making G_alpha strictly diagonally dominant."""
    return np.abs(cfg.alpha) + np.abs(prob.Q).sum(axis=1) + 1.0


def max_step(prob: PrimalProblem, cfg: PerturbationConfig, sigma, direction) -> float:
    """Largest safe step along ``direction`` that keeps sigma inside S+_alpha.

    Doubling until the ray leaves the cone, then bisection down to
    ``cfg.bisection_tol``; the boundary estimate is shrunk by ``cfg.safety``.
    """
    s = np.asarray(sigma, dtype=float)
    d = np.asarray(direction, dtype=float)

    # G only grows along a nonnegative direction
    if np.all(d >= 0):
        return cfg.step_cap

    def feasible(a: float) -> bool:
        return is_dual_feasible(prob, cfg, s + a * d)

    lo, hi = 0.0, 1.0
    while feasible(hi):
        lo = hi
        if hi >= cfg.step_cap:
            return cfg.step_cap
        hi = min(2.0 * hi, cfg.step_cap)

    while hi - lo > cfg.bisection_tol:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return lo * (1.0 - cfg.safety)


@dataclass
class CertificateCheck:
    """The checkable global-optimality conditions at a dual iterate."""

    negative_definite: bool
    gradient_small: bool
    feasible: bool
    spins_tight: bool
    max_spin_deviation: float = 0.0
    gradient_norm: float = 0.0
    reasons: list[str] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.negative_definite and self.gradient_small and self.feasible and self.spins_tight


def certify(
    prob: PrimalProblem, cfg: PerturbationConfig, iterate: Optional[DualIterate]
) -> CertificateCheck:
    """Check Q + Diag(alpha) < 0, ||d||_inf <= eps, sigma feasible and |x_bar^2 - 1| <= tau."""
    neg_def = is_negative_definite(prob.Q, cfg.alpha, cfg.pd_margin)
    if iterate is None:
        check = CertificateCheck(neg_def, False, False, False)
    else:
        deviation = float(np.max(np.abs(iterate.x_bar**2 - 1.0)))
        check = CertificateCheck(
            negative_definite=neg_def,
            gradient_small=iterate.gradient_norm <= cfg.epsilon,
            feasible=iterate.is_feasible and is_dual_feasible(prob, cfg, iterate.sigma),
            spins_tight=deviation <= cfg.tau,
            max_spin_deviation=deviation,
            gradient_norm=iterate.gradient_norm,
        )
    for name in ("negative_definite", "gradient_small", "feasible", "spins_tight"):
        if not getattr(check, name):
            check.reasons.append(f"not_{name}")
    return check
