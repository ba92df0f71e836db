"""Canonical dual solver."""

from .algorithm import algorithm1, round_spins
from .core import (
    CertificateCheck,
    alpha_dual_value,
    certify,
    default_sigma0,
    dual_gradient,
    dual_value,
    evaluate,
    is_dual_feasible,
    is_negative_definite,
    max_step,
)
from .line_search import golden_section
from .state import DualIterate, PerturbationConfig, StopReason

__all__ = [
    "CertificateCheck",
    "DualIterate",
    "PerturbationConfig",
    "StopReason",
    "algorithm1",
    "alpha_dual_value",
    "certify",
    "default_sigma0",
    "dual_gradient",
    "dual_value",
    "evaluate",
    "golden_section",
    "is_dual_feasible",
    "is_negative_definite",
    "max_step",
    "round_spins",
]
