"""
Central-cut ellipsoid method for low-dimensional convex minimization.

Used on the dual functions of the jamming problems: 2 or 3 dual variables,
some constrained to the nonnegative orthant, with an analytic subgradient
oracle. An ellipsoid is {x : (x - c)^T P^-1 (x - c) <= 1}.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence
import logging
import math

import numpy as np
from numpy.typing import ArrayLike

from ..utils.exceptions import ContractError, NumericalError

logger = logging.getLogger(__name__)

Oracle = Callable[[np.ndarray], tuple[float, np.ndarray]]

SYMMETRY_TOL = 1e-12
BOUNDARY_FRACTION = 0.99
MAX_RESETS = 3


@dataclass(frozen=True, eq=False)
class Ellipsoid:
    """Center and symmetric positive-definite shape matrix."""

    center: np.ndarray
    shape: np.ndarray

    def __post_init__(self) -> None:
        center = np.array(self.center, dtype=float, copy=True)
        shape = np.array(self.shape, dtype=float, copy=True)
        n = center.size
        if center.ndim != 1 or n < 2:
            raise ContractError(f"Ellipsoid center must be a vector of dim >= 2: {center.shape}")
        if shape.shape != (n, n):
            raise ContractError(f"Shape matrix must be {n}x{n}, got {shape.shape}")
        if not np.all(np.isfinite(center)) or not np.all(np.isfinite(shape)):
            raise NumericalError("Ellipsoid has non-finite entries")
        scale = max(float(np.max(np.abs(shape))), 1e-300)
        if np.max(np.abs(shape - shape.T)) > SYMMETRY_TOL * scale:
            raise NumericalError("Ellipsoid shape matrix is not symmetric")
        if np.min(np.linalg.eigvalsh(shape)) <= 0.0:
            raise NumericalError("Ellipsoid shape matrix is not positive definite")
        center.setflags(write=False)
        shape.setflags(write=False)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "shape", shape)

    @classmethod
    def ball(cls, center: ArrayLike, radius: float) -> "Ellipsoid":
        """Ball of the given radius around center."""
        center_arr = np.asarray(center, dtype=float)
        return cls(center=center_arr, shape=np.eye(center_arr.size) * radius**2)

    @property
    def dim(self) -> int:
        return int(self.center.size)

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.shape))

    def contains(self, point: ArrayLike, slack: float = 1.0) -> bool:
        """True when the point lies inside the ellipsoid scaled by slack."""
        return self.norm(point) <= slack

    def norm(self, point: ArrayLike) -> float:
        """Ellipsoidal norm of point - center."""
        d = np.asarray(point, dtype=float) - self.center
        return float(math.sqrt(max(d @ np.linalg.solve(self.shape, d), 0.0)))

    def width(self, g: np.ndarray) -> float:
        """Half-width sqrt(g^T P g) of the ellipsoid along g."""
        return float(math.sqrt(max(g @ self.shape @ g, 0.0)))

    def cut(self, g: ArrayLike) -> "Ellipsoid":
        """
        Minimum-volume ellipsoid containing the half {x : g^T (x - c) <= 0}.

        Raises:
            NumericalError: If g is degenerate for this shape or the update
                loses positive definiteness
        """
        g = np.asarray(g, dtype=float)
        n = self.dim
        gpg = float(g @ self.shape @ g)
        if not gpg > 0.0 or not math.isfinite(gpg):
            raise NumericalError(f"Cannot cut along a direction with g^T P g = {gpg}")
        g_tilde = g / math.sqrt(gpg)
        pg = self.shape @ g_tilde
        center = self.center - pg / (n + 1)
        shape = (n * n / (n * n - 1.0)) * (self.shape - (2.0 / (n + 1)) * np.outer(pg, pg))
        shape = 0.5 * (shape + shape.T)
        return Ellipsoid(center=center, shape=shape)


@dataclass(frozen=True)
class EllipsoidSettings:
    """Stopping rule and initial ball of the dual search."""

    size_tol: float = 1e-7
    max_iter: int = 2000
    radius: float = 1e3
    max_restarts: int = 3

    def initial(self, dim: int) -> Ellipsoid:
        """Ball of `radius` centered at the all-ones point."""
        return Ellipsoid.ball(np.ones(dim), self.radius)

    def unit_ball(self, dim: int) -> Ellipsoid:
        """Unit ball at the origin, for duals that are positively homogeneous."""
        return Ellipsoid.ball(np.zeros(dim), 1.0)


class EllipsoidStatus(Enum):
    """Why the ellipsoid loop stopped."""

    CONVERGED = "converged"
    EARLY_EXIT = "early_exit"
    ITERATION_CAP = "iteration_cap"


@dataclass(frozen=True, eq=False)
class EllipsoidResult:
    """Best evaluated point of an ellipsoid run."""

    point: np.ndarray
    value: float
    status: EllipsoidStatus
    iterations: int
    restarts: int = 0


def ellipsoid_minimize(
    oracle: Oracle,
    init: Ellipsoid,
    size_tol: float = 1e-7,
    max_iter: int = 2000,
    early_exit: Optional[float] = None,
    nonneg: Optional[Sequence[bool]] = None,
    max_restarts: int = 3,
    bound: Optional[float] = None,
) -> EllipsoidResult:
    """
    Minimize a convex function given by a value/subgradient oracle.

    Coordinates flagged in `nonneg` are restricted to be >= 0 and, with
    `bound`, the whole point to the ball ||x|| <= bound. A center outside
    the domain is projected before the oracle call and then removed with a
    cut along the violated constraint's gradient. The oracle is only ever
    queried at feasible points.

    Args:
        oracle: Maps a point to (value, subgradient)
        init: Ellipsoid assumed to contain a minimizer
        size_tol: Stop when sqrt(g^T P g) falls below this
        max_iter: Iteration cap per run
        early_exit: Stop as soon as a value strictly below this is seen
        nonneg: Per-coordinate nonnegativity flags (default: none)
        max_restarts: Restarts with a 10x larger ball when the best point
            ends up on the boundary of the initial ball (unbounded searches only)
        bound: Radius of the norm ball the search is restricted to

    Returns:
        EllipsoidResult with the best evaluated point
    """
    mask = np.zeros(init.dim, dtype=bool) if nonneg is None else np.asarray(nonneg, dtype=bool)
    if mask.size != init.dim:
        raise ContractError(f"nonneg has {mask.size} flags for a {init.dim}-dim ellipsoid")
    if bound is not None and not bound > 0.0:
        raise ContractError(f"bound must be > 0, got {bound}")

    total_iterations = 0
    start = init
    for restart in range(max_restarts + 1):
        result = _run(oracle, start, size_tol, max_iter, early_exit, mask, bound)
        total_iterations += result.iterations
        result = EllipsoidResult(
            point=result.point,
            value=result.value,
            status=result.status,
            iterations=total_iterations,
            restarts=restart,
        )
        if result.status is EllipsoidStatus.EARLY_EXIT or bound is not None:
            return result
        if start.norm(result.point) < BOUNDARY_FRACTION:
            return result
        if restart < max_restarts:
            logger.warning(
                f"Ellipsoid optimum near the boundary of the initial ball "
                f"(restart {restart + 1}/{max_restarts}, radius x10)"
            )
            start = Ellipsoid(center=start.center, shape=start.shape * 100.0)

    logger.warning("Ellipsoid optimum still on the boundary after all restarts")
    return result


def _project(x: np.ndarray, mask: np.ndarray, bound: Optional[float]) -> np.ndarray:
    """Closest point of the orthant-ball domain."""
    y = np.where(mask & (x < 0.0), 0.0, x)
    if bound is not None:
        norm = float(np.linalg.norm(y))
        if norm > bound:
            y = y * (bound / norm)
    return y


def _run(
    oracle: Oracle,
    init: Ellipsoid,
    size_tol: float,
    max_iter: int,
    early_exit: Optional[float],
    mask: np.ndarray,
    bound: Optional[float],
) -> EllipsoidResult:
    ellipsoid = init
    resets_left = MAX_RESETS
    best_point = _project(init.center, mask, bound)
    best_value = math.inf

    for k in range(1, max_iter + 1):
        x = ellipsoid.center
        outside = mask & (x < 0.0)
        query = _project(x, mask, bound)
        beyond = bound is not None and float(np.linalg.norm(x)) > bound

        value, g = oracle(query)
        if value < best_value:
            best_value, best_point = value, query.copy()
        if early_exit is not None and value < early_exit:
            logger.debug(f"Ellipsoid early exit at iteration {k} with value {value:.6g}")
            return EllipsoidResult(best_point, best_value, EllipsoidStatus.EARLY_EXIT, k)

        if outside.any():
            # Feasibility cut on the most violated constraint -x_i <= 0
            i = int(np.argmin(np.where(outside, x, np.inf)))
            a = np.zeros(ellipsoid.dim)
            a[i] = -1.0
        elif beyond:
            # Feasibility cut on ||x|| <= bound
            a = x
        else:
            a = np.asarray(g, dtype=float)
            if not np.all(np.isfinite(a)):
                raise ContractError(f"Oracle returned a non-finite subgradient at {query}")
            if not np.any(a) or ellipsoid.width(a) <= size_tol:
                return EllipsoidResult(best_point, best_value, EllipsoidStatus.CONVERGED, k)

        updated, resets_left = _cut_or_reset(ellipsoid, a, resets_left, mask, bound)
        if updated is None:
            logger.debug(f"Ellipsoid collapsed at iteration {k}, best value {best_value:.6g}")
            return EllipsoidResult(best_point, best_value, EllipsoidStatus.CONVERGED, k)
        ellipsoid = updated

    logger.debug(f"Ellipsoid reached the iteration cap ({max_iter}), best value {best_value:.6g}")
    return EllipsoidResult(best_point, best_value, EllipsoidStatus.ITERATION_CAP, max_iter)


def _cut_or_reset(
    ellipsoid: Ellipsoid,
    g: np.ndarray,
    resets_left: int,
    mask: np.ndarray,
    bound: Optional[float],
) -> tuple[Optional[Ellipsoid], int]:
    """
    Cut, or replace an ill-conditioned ellipsoid by its enclosing ball.

    A bounded search resets to a ball around the projected center, never
    wider than 2 bound (which holds the whole domain), and returns None
    instead of failing once its resets are used up.
    """
    try:
        return ellipsoid.cut(g), resets_left
    except NumericalError:
        if resets_left == 0:
            if bound is not None:
                return None, 0
            raise
        center = ellipsoid.center
        radius = math.sqrt(float(np.max(np.linalg.eigvalsh(ellipsoid.shape))))
        if bound is not None:
            projected = _project(center, mask, bound)
            radius = radius + float(np.linalg.norm(center - projected))
            radius = radius if radius < 2.0 * bound else 2.0 * bound
            center = projected
        logger.warning(f"Ellipsoid lost definiteness, resetting to a ball of radius {radius:.3g}")
        return Ellipsoid.ball(center, radius), resets_left - 1
