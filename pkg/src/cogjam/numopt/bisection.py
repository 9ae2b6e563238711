"""
Scalar searches: bisection on monotone residuals or predicates, and
golden-section maximization of unimodal functions.
"""

from dataclasses import dataclass
from typing import Callable, Union
import logging
import math

import numpy as np

from ..utils.exceptions import BracketError, ContractError, ConvergenceError

logger = logging.getLogger(__name__)

# A residual (sign matters) or a predicate (truth value matters)
MonotoneFn = Callable[[float], Union[float, bool]]

INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class BisectionSpec:
    """Bracket and stopping rule for a bisection."""

    lo: float
    hi: float
    tol_abs: float = 1e-12
    tol_rel: float = 1e-10
    max_iter: int = 200

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or not self.lo < self.hi:
            raise ContractError(f"Bisection needs finite lo < hi, got [{self.lo}, {self.hi}]")
        if self.tol_abs <= 0 or self.tol_rel <= 0:
            raise ContractError("Bisection tolerances must be > 0")
        if self.max_iter < 1:
            raise ContractError("Bisection needs max_iter >= 1")

    def width_ok(self, lo: float, hi: float) -> bool:
        mid = 0.5 * (lo + hi)
        return hi - lo <= max(self.tol_abs, self.tol_rel * abs(mid))


def _is_predicate(value: Union[float, bool]) -> bool:
    return isinstance(value, (bool, np.bool_))


def _side(value: Union[float, bool]) -> bool:
    if _is_predicate(value):
        return bool(value)
    if math.isnan(value):
        raise BracketError("Residual evaluated to NaN inside the bracket")
    return value >= 0.0


def bisect_bracket(f: MonotoneFn, spec: BisectionSpec) -> tuple[float, float]:
    """
    Shrink a bracket around the sign change (or predicate flip) of f.

    Works for increasing and decreasing f. A residual that is exactly zero
    at an endpoint collapses the bracket onto that endpoint.

    Args:
        f: Monotone residual or predicate
        spec: Bracket and tolerances

    Returns:
        (lo, hi) with f(lo) and f(hi) on opposite sides

    Raises:
        BracketError: If f does not change side over [lo, hi]
        ConvergenceError: If max_iter is reached first
    """
    lo, hi = spec.lo, spec.hi
    f_lo, f_hi = f(lo), f(hi)

    for endpoint, value in ((lo, f_lo), (hi, f_hi)):
        if not _is_predicate(value) and value == 0.0:
            return endpoint, endpoint

    side_lo = _side(f_lo)
    if side_lo == _side(f_hi):
        raise BracketError(f"No sign change over [{lo}, {hi}]")

    for _ in range(spec.max_iter):
        if spec.width_ok(lo, hi):
            return lo, hi
        mid = 0.5 * (lo + hi)
        if _side(f(mid)) == side_lo:
            lo = mid
        else:
            hi = mid

    if spec.width_ok(lo, hi):
        return lo, hi
    raise ConvergenceError(
        f"Bisection did not reach tolerance in {spec.max_iter} iterations "
        f"(bracket [{lo!r}, {hi!r}])"
    )


def bisect_monotone(f: MonotoneFn, spec: BisectionSpec) -> float:
    """
    Locate the sign change of a monotone residual or the flip of a predicate.

    Args:
        f: Monotone residual or predicate
        spec: Bracket and tolerances

    Returns:
        Midpoint of the final bracket
    """
    lo, hi = bisect_bracket(f, spec)
    return 0.5 * (lo + hi)


def golden_section_maximize(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol_rel: float = 1e-3,
    max_iter: int = 40,
) -> tuple[float, float]:
    """
    Maximize a function assumed unimodal on [lo, hi].

    Nothing breaks when the assumption fails; the result is then only the
    best of the evaluated points.

    Returns:
        (x, f(x)) for the best evaluated point
    """
    if not lo < hi:
        raise ContractError(f"Golden section needs lo < hi, got [{lo}, {hi}]")

    a, b = lo, hi
    x1 = b - INV_GOLDEN * (b - a)
    x2 = a + INV_GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    best_x, best_f = (x1, f1) if f1 >= f2 else (x2, f2)

    for _ in range(max_iter):
        if b - a <= tol_rel * max(abs(a), abs(b)):
            break
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_GOLDEN * (b - a)
            f1 = f(x1)
            if f1 > best_f:
                best_x, best_f = x1, f1
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_GOLDEN * (b - a)
            f2 = f(x2)
            if f2 > best_f:
                best_x, best_f = x2, f2

    logger.debug(f"Golden section best f={best_f:.6g} at x={best_x:.6g}")
    return best_x, best_f
