"""
Optimal jamming for the relative eavesdropping rate at fixed transmit power.

The relative rate t is maximized by bisection. Each step asks whether some
policy reaches t within the budget, answered on the dual: the problem is
infeasible iff the dual function f2(mu, lambda) goes negative somewhere,
which the ellipsoid method detects. Per-state dual maximization has a
closed form: either jam exactly to the required power (success) or jam
the failure-optimal power q_bar in [0, c).
"""

from dataclasses import dataclass
from typing import Any, Iterator, Optional
import logging
import math

import numpy as np

from ..metrics.evaluation import relative_rate
from ..metrics.link import Gains, rate
from ..models.channel import StateEnsemble
from ..models.policy import JammingPolicy, NoiseModel
from ..models.solutions import (
    BisectionStep,
    FeasibilityResult,
    FeasibilityStatus,
    FixedPowerSolution,
)
from ..numopt.bisection import BisectionSpec, bisect_bracket
from ..numopt.ellipsoid import EllipsoidSettings, EllipsoidStatus, ellipsoid_minimize
from ..utils.exceptions import ContractError
from ..utils.summation import weighted_sum
from .outage import required_power
from .recovery import CandidateTracker, repair_budget, shortfall

logger = logging.getLogger(__name__)

LAMBDA_FLOOR = 1e-12
T_TOL = 1e-3
RATIO_BOUNDS = (1e-12, 1e12)
LN2 = math.log(2.0)


@dataclass(frozen=True, eq=False)
class SubproblemResult:
    """
    Per-state maximizer of a dual subproblem.

    Unpacks as (q, value). `success` says whether the monitor decodes at q,
    `rate` is the suspicious rate at q and `p` the transmit power used.
    """

    q: Any
    value: Any
    success: Any
    rate: Any
    p: Any = None

    def __iter__(self) -> Iterator[Any]:
        yield self.q
        yield self.value


def _as_arrays(state: Gains) -> tuple[np.ndarray, np.ndarray, np.ndarray, bool]:
    g0 = np.asarray(state.g0, dtype=float)
    g1 = np.asarray(state.g1, dtype=float)
    g2 = np.asarray(state.g2, dtype=float)
    return g0, g1, g2, g0.ndim == 0


def _unwrap(scalar: bool, *arrays: np.ndarray) -> tuple[Any, ...]:
    if not scalar:
        return arrays
    return tuple(a.item() for a in arrays)


def failure_power(
    state: Gains, power: float, noise: NoiseModel, mu: float, lam: float, t: float
) -> Any:
    """
    Stationary jamming power when the monitor is not meant to decode.

    Maximizes -t mu log2(1 + g0 P / (g2 q + sigma0^2)) - lambda q over q >= 0,
    clamped to [0, c] with c the required power. States with g2 = 0 get 0.
    """
    g0, _, g2, scalar = _as_arrays(state)
    lam = max(lam, LAMBDA_FLOOR)
    c = np.asarray(required_power(state, noise), dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        root = np.sqrt(g0 * g0 * power * power + 4.0 * t * mu * g0 * g2 * power / (LN2 * lam))
        q_bar = (root - g0 * power) / (2.0 * g2) - noise.sigma0_sq / g2
    q_bar = np.where(np.isfinite(q_bar), q_bar, 0.0)
    q_bar = np.minimum(np.maximum(q_bar, 0.0), np.maximum(c, 0.0))
    return q_bar.item() if scalar else q_bar


def dual_subproblem_p2(
    state: Gains, power: float, noise: NoiseModel, mu: float, lam: float, t: float
) -> SubproblemResult:
    """
    Maximize mu (X - t) r0 - lambda q over the jamming power of one state.

    Args:
        state: A FadingState or a whole ensemble (vectorized)
        power: Fixed transmit power P
        noise: Receiver noise powers
        mu: Dual variable of the rate constraint (>= 0)
        lam: Dual variable of the budget (floored at 1e-12)
        t: Relative-rate target in [0, 1]

    Returns:
        SubproblemResult unpacking as (q, value)
    """
    g0, g1, g2, scalar = _as_arrays(state)
    lam = max(lam, LAMBDA_FLOOR)
    c = np.asarray(required_power(state, noise), dtype=float)
    q_bar = np.asarray(failure_power(state, power, noise, mu, lam, t), dtype=float)

    r_free = np.asarray(rate(g0 * power / noise.sigma0_sq), dtype=float)
    r_success = np.asarray(rate(g1 * power / noise.sigma1_sq), dtype=float)
    r_failure = np.asarray(rate(g0 * power / (g2 * q_bar + noise.sigma0_sq)), dtype=float)

    free = c <= 0.0
    jammable = (c > 0.0) & np.isfinite(c)
    c_finite = np.where(jammable, c, 0.0)
    v_success = np.where(jammable, mu * (1.0 - t) * r_success - lam * c_finite, -math.inf)
    v_failure = -mu * t * r_failure - lam * q_bar
    # q_bar == c can only be approached from the failure side
    jam = jammable & (v_success >= v_failure)

    q = np.where(free, 0.0, np.where(jam, c_finite, q_bar))
    value = np.where(free, mu * (1.0 - t) * r_free, np.where(jam, v_success, v_failure))
    success = free | jam
    r0 = np.where(free, r_free, np.where(jam, r_success, r_failure))
    p = np.full_like(q, float(power))
    return SubproblemResult(*_unwrap(scalar, q, value, success, r0, p))


def dual_value_p2(
    ensemble: StateEnsemble,
    power: float,
    noise: NoiseModel,
    budget: float,
    mu: float,
    lam: float,
    t: float,
) -> tuple[float, np.ndarray]:
    """
    Dual function f2(mu, lambda) and its subgradient.

    Returns:
        (f2, (sum w (X - t) r0, Q - sum w q)) at the per-state maximizers
    """
    value, subgradient, _ = _dual_point(ensemble, power, noise, budget, mu, lam, t)
    return value, subgradient


def _dual_point(
    ensemble: StateEnsemble,
    power: float,
    noise: NoiseModel,
    budget: float,
    mu: float,
    lam: float,
    t: float,
) -> tuple[float, np.ndarray, SubproblemResult]:
    sub = dual_subproblem_p2(ensemble, power, noise, mu, lam, t)
    w = ensemble.weights
    rate_slack = weighted_sum(w, (sub.success.astype(float) - t) * sub.rate)
    budget_slack = budget - weighted_sum(w, sub.q)
    value = mu * rate_slack + max(lam, LAMBDA_FLOOR) * budget_slack
    return value, np.array([rate_slack, budget_slack]), sub


def feasibility_p22(
    ensemble: StateEnsemble,
    power: float,
    noise: NoiseModel,
    budget: float,
    t: float,
    settings: Optional[EllipsoidSettings] = None,
) -> FeasibilityResult:
    """
    Decide whether some policy reaches relative rate t within the budget.

    The dual f2 is minimized over mu, lambda >= 0. A value below
    -1e-8 (1 + |Q|) proves infeasibility. Otherwise a policy is recovered
    from the per-state responses seen along the search (plus a search over
    the ratio mu/lambda that meets the budget), each repaired to the budget,
    and the one with the best relative rate is returned.

    Args:
        ensemble: Fading states (perfect cancellation is assumed)
        power: Fixed transmit power P
        noise: Receiver noise powers
        budget: Average jamming power Q
        t: Relative-rate target in [0, 1]
        settings: Ellipsoid stopping rule

    Returns:
        FeasibilityResult with duals (mu, lambda)
    """
    if not 0.0 <= t <= 1.0:
        raise ContractError(f"Relative-rate target must lie in [0, 1], got {t}")
    settings = settings or EllipsoidSettings()
    active = ensemble.with_perfect_sic()
    feas_tol = 1e-8 * (1.0 + abs(budget))
    tracker = CandidateTracker()

    def oracle(x: np.ndarray) -> tuple[float, np.ndarray]:
        value, subgradient, sub = _dual_point(active, power, noise, budget, x[0], x[1], t)
        violation = shortfall(subgradient[0], 1.0) + shortfall(subgradient[1], budget)
        tracker.offer(violation, sub.q, sub.success, sub.rate)
        return value, subgradient

    result = ellipsoid_minimize(
        oracle,
        settings.initial(2),
        size_tol=settings.size_tol,
        max_iter=settings.max_iter,
        early_exit=-feas_tol,
        nonneg=(True, True),
        max_restarts=settings.max_restarts,
    )
    duals = (float(result.point[0]), float(result.point[1]))
    if result.status is EllipsoidStatus.EARLY_EXIT:
        logger.debug(
            f"Fixed-power check t={t:.6f}: infeasible after {result.iterations} iterations"
        )
        return FeasibilityResult(FeasibilityStatus.INFEASIBLE, duals, result.iterations)

    final = dual_subproblem_p2(active, power, noise, duals[0], duals[1], t)
    candidates = [(final.q, final.success, final.rate)]
    candidates += _ratio_candidates(active, power, noise, budget, t)
    candidates += tracker.candidates()

    r_free = np.asarray(rate(active.g0 * power / noise.sigma0_sq), dtype=float)
    p = np.full(len(active), float(power))
    best_q = np.zeros(len(active))
    best_rate = relative_rate(active, p, best_q, noise)
    for q, success, r0 in candidates:
        benefit = (1.0 - t) * r0 + t * r_free
        repaired = repair_budget(active.weights, q, success, benefit, budget)
        achieved = relative_rate(active, p, repaired, noise)
        if achieved > best_rate:
            best_q, best_rate = repaired, achieved

    logger.debug(
        f"Fixed-power check t={t:.6f}: feasible after {result.iterations} iterations, "
        f"recovered relative rate {best_rate:.6f}"
    )
    return FeasibilityResult(
        FeasibilityStatus.FEASIBLE,
        duals,
        result.iterations,
        policy=JammingPolicy(q=best_q, label="optimal"),
        achieved=best_rate,
    )


def _ratio_candidates(
    ensemble: StateEnsemble, power: float, noise: NoiseModel, budget: float, t: float
) -> list[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Responses at the ratio mu/lambda where the average jamming power crosses Q."""
    limit = budget + 1e-12 * max(1.0, budget)

    def respond(log_ratio: float) -> SubproblemResult:
        return dual_subproblem_p2(ensemble, power, noise, math.exp(log_ratio), 1.0, t)

    def affordable(log_ratio: float) -> bool:
        return weighted_sum(ensemble.weights, respond(log_ratio).q) <= limit

    lo, hi = math.log(RATIO_BOUNDS[0]), math.log(RATIO_BOUNDS[1])
    if affordable(hi):
        edges = [hi]
    elif not affordable(lo):
        edges = [lo]
    else:
        edges = list(bisect_bracket(affordable, BisectionSpec(lo, hi, tol_abs=1e-9, tol_rel=1e-12)))

    responses = [respond(edge) for edge in edges]
    return [(r.q, r.success, r.rate) for r in responses]


def solve_fixed(
    ensemble: StateEnsemble,
    power: float,
    noise: NoiseModel,
    budget: float,
    t_tol: float = T_TOL,
    settings: Optional[EllipsoidSettings] = None,
) -> FixedPowerSolution:
    """
    Maximize the relative eavesdropping rate under fixed transmit power.

    Bisects t on [0, 1] until the bracket is narrower than t_tol. The
    reported t_star is the relative rate the returned policy actually
    achieves, which is never below that of the passive policy.

    Args:
        ensemble: Fading states (phi is ignored)
        power: Transmit power P > 0
        noise: Receiver noise powers
        budget: Average jamming power Q >= 0
        t_tol: Bisection tolerance on t
        settings: Ellipsoid stopping rule

    Returns:
        FixedPowerSolution with the policy, t_star, duals and the t trace
    """
    if not power > 0.0 or not math.isfinite(power):
        raise ContractError(f"Transmit power must be finite and > 0, got {power}")
    if not math.isfinite(budget) or budget < 0.0:
        raise ContractError(f"Jamming budget must be finite and >= 0, got {budget}")

    active = ensemble.with_perfect_sic()
    n = len(active)
    p = np.full(n, float(power))
    best_policy = JammingPolicy.zeros(n, label="optimal")
    best_rate = relative_rate(active, p, best_policy.q, noise)
    mu_star = lambda_star = 0.0
    trace: list[BisectionStep] = []

    lo, hi = 0.0, 1.0
    while hi - lo > t_tol:
        t = 0.5 * (lo + hi)
        result = feasibility_p22(active, power, noise, budget, t, settings)
        trace.append(BisectionStep(t=t, feasible=result.feasible, achieved=result.achieved))
        if not result.feasible:
            hi = t
            continue
        lo = t
        if result.policy is not None and result.achieved > best_rate:
            best_policy, best_rate = result.policy, result.achieved
            mu_star, lambda_star = result.duals

    logger.info(
        f"Fixed-power solver: Q={budget:.6g}, P={power:.6g}, t* {best_rate:.4f} "
        f"(bracket [{lo:.4f}, {hi:.4f}], {len(trace)} feasibility tests)"
    )
    return FixedPowerSolution(
        policy=best_policy,
        t_star=best_rate,
        mu_star=mu_star,
        lambda_star=lambda_star,
        trace=trace,
    )
