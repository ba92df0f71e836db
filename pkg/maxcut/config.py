"""Configuration settings for the max-cut solvers."""

from pathlib import Path
from typing import Optional

from pydantic_settings import BaseSettings


class SolverSettings(BaseSettings):
    """Solver defaults loaded from environment variables (prefix MAXCUT_)."""

    # Paths
    project_root: Path = Path(__file__).parent.parent
    data_dir: Path = Path(__file__).parent.parent / "data" / "tsplib"
    reference_path: Path = Path(__file__).parent.parent / "data" / "reference_cuts.csv"

    # Dual ascent
    epsilon: float = 1e-8
    max_iters: int = 5000
    tau: float = 0.05
    fix_fraction: float = 0.2
    reduced_max_iters: int = 500
    pd_margin: float = 1e-10
    safety: float = 1e-3
    step_cap: float = 1e6
    step_tol: float = 1e-6
    bisection_tol: float = 1e-6

    # Perturbation policy
    alpha_mode: str = "GERSHGORIN"
    alpha_slack: float = 1.0
    beta_mode: str = "CONSTANT"
    beta_scale: float = 500.0
    linear_magnitude: float = 0.9
    rng_seed: int = 0

    # Compensation
    improve_tol: float = 1e-9
    pass_cap: int = 100

    # Oracle / batch
    oracle_limit: int = 26
    workers: Optional[int] = None

    log_level: str = "WARNING"

    class Config:
        env_prefix = "MAXCUT_"
        env_file = ".env"
        env_file_encoding = "utf-8"
        extra = "ignore"


settings = SolverSettings()
