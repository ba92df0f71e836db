"""Golden-section search for the scalar dual step."""

import math
from typing import Callable

from maxcut.errors import InputError, NumericError

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2


def golden_section(
    objective: Callable[[float], float], lo: float, hi: float, tol: float = 1e-6
) -> float:
    """
    Maximize a unimodal ``objective`` on [lo, hi].

    Returns the midpoint of the final bracket, which has width <= tol and
    contains a local maximizer.
    """
    if not lo < hi:
        raise InputError(f"golden_section needs lo < hi, got [{lo}, {hi}]")
    if tol <= 0:
        raise InputError(f"tol must be positive, got {tol}")

    def f(a: float) -> float:
        value = objective(a)
        if not math.isfinite(value):
            raise NumericError(f"objective is {value} at a = {a}")
        return value

    a, b = lo, hi
    h = b - a
    if h <= tol:
        return 0.5 * (a + b)

    # Required steps to achieve tolerance
    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)

    for _ in range(n - 1):
        if yc > yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)

    if yc > yd:
        return 0.5 * (a + d)
    return 0.5 * (c + b)
