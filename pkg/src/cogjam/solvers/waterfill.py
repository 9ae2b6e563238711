"""
Optimal jamming for the relative eavesdropping rate against a water-filling transmitter.

The suspicious transmitter spreads its average power P by water-filling
over the effective noise (g2 q + sigma0^2)/g0, with water level
1/(ln2 beta). For a fixed beta the monitor's problem has a closed-form
per-state dual subproblem in (mu, lambda, zeta), solved by the ellipsoid
method inside a bisection on the relative-rate target t. beta itself is
searched over [beta_min, beta_max]: beta_max is the level with no jamming,
beta_min the lowest level any budget-feasible jamming can push it to.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Optional
import logging
import math

import numpy as np

from ..metrics.evaluation import relative_rate
from ..metrics.link import Gains
from ..models.channel import StateEnsemble
from ..models.policy import JammingPolicy, NoiseModel
from ..models.solutions import (
    BetaScanPoint,
    FeasibilityResult,
    FeasibilityStatus,
    WaterfillProfile,
    WfSolution,
)
from ..numopt.bisection import BisectionSpec, bisect_bracket, golden_section_maximize
from ..numopt.ellipsoid import EllipsoidSettings, EllipsoidStatus, ellipsoid_minimize
from ..utils.exceptions import ContractError
from ..utils.summation import weighted_sum
from .fixed import T_TOL, SubproblemResult
from .outage import required_power
from .recovery import CandidateTracker, repair_budget, shortfall

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)
BETA_GRID_SIZE = 32
BETA_MIN_FLOOR = 1e-6
BETA_TOL = 1e-4
POWER_RTOL = 1e-9


def _check_power(power: float) -> None:
    if not power > 0.0 or not math.isfinite(power):
        raise ContractError(f"Transmit power must be finite and > 0, got {power}")


def level_from_beta(beta: float) -> float:
    """Water level 1/(ln2 beta)."""
    return 1.0 / (LN2 * beta)


def effective_noise(state: Gains, q: Any, noise: NoiseModel) -> np.ndarray:
    """(g2 q + sigma0^2)/g0, +inf where g0 = 0 or q = +inf."""
    g0 = np.asarray(state.g0, dtype=float)
    g2 = np.asarray(state.g2, dtype=float)
    q = np.asarray(q, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        level = (g2 * q + noise.sigma0_sq) / g0
    return np.where(np.isnan(level), math.inf, level)


def kill_power(state: Gains, level: float, noise: NoiseModel) -> np.ndarray:
    """
    Smallest jamming power that drives the transmit power to zero at this level.

    [(g0 L - sigma0^2)/g2]+, +inf when g2 = 0 and the state is above water.
    """
    g0 = np.asarray(state.g0, dtype=float)
    g2 = np.asarray(state.g2, dtype=float)
    numerator = g0 * level - noise.sigma0_sq
    with np.errstate(divide="ignore", invalid="ignore"):
        q = numerator / g2
    q = np.where(g2 == 0.0, np.where(numerator > 0.0, math.inf, 0.0), q)
    return np.maximum(q, 0.0)


def power_at_level(state: Gains, q: Any, level: float, noise: NoiseModel) -> np.ndarray:
    """Transmit power [L - (g2 q + sigma0^2)/g0]+; exactly 0 once q reaches the kill power."""
    n_eff = effective_noise(state, q, noise)
    p = np.maximum(level - n_eff, 0.0)
    killed = np.asarray(q, dtype=float) >= kill_power(state, level, noise)
    return np.where(killed, 0.0, p)


def rate_at_level(state: Gains, q: Any, level: float, noise: NoiseModel) -> np.ndarray:
    """Suspicious rate log2(L / n_eff) under water-filling; exactly 0 where no power is sent."""
    n_eff = effective_noise(state, q, noise)
    p = power_at_level(state, q, level, noise)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.log2(level / n_eff)
    return np.where(p > 0.0, r, 0.0)


def waterfill(
    ensemble: StateEnsemble, policy: JammingPolicy, power: float, noise: NoiseModel
) -> WaterfillProfile:
    """
    Water-fill the transmit power P against a jamming policy.

    The level is found exactly: states are sorted by effective noise and
    the active set grows while the candidate level stays above the next
    state's noise.

    Args:
        ensemble: Fading states and weights
        policy: Jamming powers the transmitter sees
        power: Average transmit power P > 0
        noise: Receiver noise powers

    Returns:
        WaterfillProfile with beta and the per-state powers
    """
    _check_power(power)
    if len(policy) != len(ensemble):
        raise ContractError(f"Policy has {len(policy)} entries for {len(ensemble)} states")

    n_eff = effective_noise(ensemble, policy.q, noise)
    finite = np.flatnonzero(np.isfinite(n_eff))
    if finite.size == 0:
        raise ContractError("No state can carry transmit power")

    order = finite[np.argsort(n_eff[finite], kind="stable")]
    levels_sorted = n_eff[order]
    w_sorted = ensemble.weights[order]
    candidate = (power + np.cumsum(w_sorted * levels_sorted)) / np.cumsum(w_sorted)
    active = np.flatnonzero(candidate > levels_sorted)
    level = float(candidate[active[-1]]) if active.size else float(candidate[0])

    p = np.where(np.isfinite(n_eff), np.maximum(level - n_eff, 0.0), 0.0)
    return WaterfillProfile(beta=1.0 / (LN2 * level), p=p, power=float(power))


def beta_max(ensemble: StateEnsemble, power: float, noise: NoiseModel) -> float:
    """Water-filling beta without jamming, the largest beta any policy can yield."""
    return waterfill(ensemble, JammingPolicy.zeros(len(ensemble)), power, noise).beta


def _cheapest_cut(
    state: Gains, weights: np.ndarray, p_idle: np.ndarray, excess: float
) -> tuple[Optional[np.ndarray], float]:
    """
    Cheapest jamming that removes `excess` average transmit power at a fixed level.

    Below its kill power a state's power falls by g2/g0 per unit of jamming,
    so the cheapest cut is a fractional knapsack: states are drained fully in
    ascending g0/g2 and the last one partially.

    Returns:
        (q, ratio): the jamming powers and the g0/g2 of the last state drained,
        or (None, inf) when the jammable states hold less than `excess`
    """
    g0 = np.asarray(state.g0, dtype=float)
    g2 = np.asarray(state.g2, dtype=float)
    q = np.zeros_like(p_idle)
    if excess <= 0.0:
        return q, 0.0
    candidates = np.flatnonzero((g2 > 0.0) & (p_idle > 0.0))
    ratio = g0[candidates] / g2[candidates]
    order = candidates[np.argsort(ratio, kind="stable")]
    drained = np.cumsum(weights[order] * p_idle[order])
    if drained.size == 0 or drained[-1] < excess:
        return None, math.inf

    k = int(np.searchsorted(drained, excess))
    full = order[:k]
    q[full] = g0[full] / g2[full] * p_idle[full]
    last = order[k]
    before = float(drained[k - 1]) if k > 0 else 0.0
    cut = min((excess - before) / weights[last], p_idle[last])
    q[last] = g0[last] / g2[last] * cut
    return q, float(g0[last] / g2[last])


def feasibility_beta(
    ensemble: StateEnsemble,
    power: float,
    noise: NoiseModel,
    budget: float,
    beta: float,
    settings: Optional[EllipsoidSettings] = None,
) -> FeasibilityResult:
    """
    Decide whether some policy within the budget yields water-filling level beta.

    Per state only q = 0 and the kill power are ever worth considering,
    since the dual integrand is linear in q below the kill power. A primal
    witness settles feasibility first: q = 0 when the idle power at this
    level already sums to P, else the cheapest jamming that drains the
    excess. Otherwise the dual, which is positively homogeneous, is
    minimized over the unit ball and a value below -feas_tol proves
    infeasibility.

    Returns:
        FeasibilityResult with duals (lambda, zeta), and the witness policy when feasible
    """
    _check_power(power)
    settings = settings or EllipsoidSettings()
    active = ensemble.with_perfect_sic()
    w = active.weights
    level = level_from_beta(beta)
    q_kill = kill_power(active, level, noise)
    p_idle = power_at_level(active, 0.0, level, noise)
    killable = (q_kill > 0.0) & np.isfinite(q_kill)
    q_kill_finite = np.where(killable, q_kill, 0.0)
    feas_tol = 1e-8 * (1.0 + abs(budget) + power)

    excess = weighted_sum(w, p_idle) - power
    if excess < -POWER_RTOL * power:
        logger.debug(f"beta={beta:.6g} lies above beta_max (idle power short by {-excess:.3g})")
        return FeasibilityResult(FeasibilityStatus.INFEASIBLE, (0.0, -1.0), 0)
    if excess <= POWER_RTOL * power:
        return FeasibilityResult(
            FeasibilityStatus.FEASIBLE, (0.0, 0.0), 0, policy=JammingPolicy.zeros(len(active))
        )
    q_cut, ratio = _cheapest_cut(active, w, p_idle, excess)
    if q_cut is not None and weighted_sum(w, q_cut) <= budget + feas_tol:
        return FeasibilityResult(
            FeasibilityStatus.FEASIBLE, (0.0, 0.0), 0, policy=JammingPolicy(q=q_cut)
        )

    def oracle(x: np.ndarray) -> tuple[float, np.ndarray]:
        lam, zeta = x
        kill = killable & (-lam * q_kill_finite >= -zeta * p_idle)
        q = np.where(kill, q_kill_finite, 0.0)
        p = np.where(kill, 0.0, p_idle)
        budget_slack = budget - weighted_sum(w, q)
        power_slack = power - weighted_sum(w, p)
        return lam * budget_slack + zeta * power_slack, np.array([budget_slack, power_slack])

    result = ellipsoid_minimize(
        oracle,
        settings.unit_ball(2),
        size_tol=settings.size_tol,
        max_iter=settings.max_iter,
        early_exit=-feas_tol,
        nonneg=(True, False),
        bound=1.0,
    )
    duals = (float(result.point[0]), float(result.point[1]))
    if result.status is not EllipsoidStatus.EARLY_EXIT:
        # Knapsack dual: lambda = 1 and zeta at the marginal g0/g2
        direction = np.array([0.0, 1.0]) if q_cut is None else np.array([1.0, ratio])
        direction /= np.linalg.norm(direction)
        if oracle(direction)[0] >= -feas_tol:
            logger.debug(f"beta={beta:.6g}: no certificate below -{feas_tol:.3g}, feasible")
            return FeasibilityResult(FeasibilityStatus.FEASIBLE, duals, result.iterations)
        duals = (float(direction[0]), float(direction[1]))
    return FeasibilityResult(FeasibilityStatus.INFEASIBLE, duals, result.iterations)


def beta_min(
    ensemble: StateEnsemble,
    power: float,
    noise: NoiseModel,
    budget: float,
    settings: Optional[EllipsoidSettings] = None,
) -> float:
    """
    Smallest beta reachable within the jamming budget.

    Bisects in log(beta) over [1e-6 beta_max, beta_max] to relative
    width 1e-4; beta_max itself is always feasible. Returns the lower end
    when even that is feasible.
    """
    _check_power(power)
    upper = beta_max(ensemble, power, noise)
    if budget <= 0.0:
        return upper

    def feasible(log_beta: float) -> bool:
        beta = min(math.exp(log_beta), upper)
        return feasibility_beta(ensemble, power, noise, budget, beta, settings).feasible

    lo, hi = math.log(upper * BETA_MIN_FLOOR), math.log(upper)
    if feasible(lo):
        logger.debug(f"beta_min below the search floor, using {math.exp(lo):.6g}")
        return upper * BETA_MIN_FLOOR
    _, hi_edge = bisect_bracket(feasible, BisectionSpec(lo, hi, tol_abs=BETA_TOL, tol_rel=1e-12))
    return min(math.exp(hi_edge), upper)


def dual_subproblem_p3(
    state: Gains,
    noise: NoiseModel,
    beta: float,
    mu: float,
    lam: float,
    zeta: float,
    t: float,
) -> SubproblemResult:
    """
    Maximize mu (X - t) r0 - lambda q - zeta p over the jamming power at level 1/(ln2 beta).

    Three candidates compete: the kill power (no transmission), the
    required power (monitor decodes, only when cheaper than killing) and
    the clamped stationary point of the failure branch. Ties prefer
    decoding, then killing.

    Args:
        state: A FadingState or a whole ensemble (vectorized)
        noise: Receiver noise powers
        beta: Water-filling dual parameter > 0
        mu: Dual variable of the rate constraint (>= 0)
        lam: Dual variable of the budget (>= 0)
        zeta: Dual variable of the transmit power equality (free)
        t: Relative-rate target in [0, 1]

    Returns:
        SubproblemResult unpacking as (q, value)
    """
    g0 = np.asarray(state.g0, dtype=float)
    g2 = np.asarray(state.g2, dtype=float)
    scalar = g0.ndim == 0
    s0 = noise.sigma0_sq
    level = level_from_beta(beta)

    q_kill = kill_power(state, level, noise)
    c = np.asarray(required_power(state, noise), dtype=float)
    q_success = np.maximum(c, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        denominator = LN2 * (g0 * lam - zeta * g2)
        stationary = np.where(
            denominator > 0.0, g0 * t * mu / denominator - s0 / g2, math.inf
        )
    stationary = np.where(np.isnan(stationary), 0.0, stationary)
    q_fail = np.maximum(np.minimum(np.minimum(q_kill, q_success), stationary), 0.0)
    q_fail = np.where(np.isfinite(q_fail), q_fail, 0.0)

    def branch(q: np.ndarray, indicator: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        q_eval = np.where(np.isfinite(q), q, 0.0)
        r = rate_at_level(state, q_eval, level, noise)
        p = power_at_level(state, q_eval, level, noise)
        return mu * (indicator - t) * r - lam * q_eval - zeta * p, r, p

    v_success, r_success, p_success = branch(q_success, 1.0)
    v_fail, r_fail, p_fail = branch(q_fail, 0.0)
    with np.errstate(invalid="ignore"):
        v_kill = np.where(np.isfinite(q_kill), -lam * q_kill, -math.inf)

    success_ok = np.isfinite(q_success) & (q_success < q_kill)
    fail_ok = q_success > 0.0
    values = np.stack(
        [
            np.where(success_ok, v_success, -math.inf),
            v_kill,
            np.where(fail_ok, v_fail, -math.inf),
        ]
    )
    choice = np.argmax(values, axis=0)

    dead = q_kill <= 0.0
    q = np.select([choice == 0, choice == 1], [q_success, q_kill], q_fail)
    value = np.max(values, axis=0)
    rate_chosen = np.select([choice == 0, choice == 1], [r_success, 0.0], r_fail)
    p = np.select([choice == 0, choice == 1], [p_success, 0.0], p_fail)
    success = (choice == 0) | (c <= 0.0)

    q = np.where(dead, 0.0, q)
    value = np.where(dead, 0.0, value)
    rate_chosen = np.where(dead, 0.0, rate_chosen)
    p = np.where(dead, 0.0, p)

    if scalar:
        return SubproblemResult(
            q.item(), value.item(), bool(success), rate_chosen.item(), p.item()
        )
    return SubproblemResult(q, value, success, rate_chosen, p)


def dual_value_p3(
    ensemble: StateEnsemble,
    power: float,
    noise: NoiseModel,
    budget: float,
    beta: float,
    mu: float,
    lam: float,
    zeta: float,
    t: float,
) -> tuple[float, np.ndarray]:
    """
    Dual function f3(mu, lambda, zeta) and its subgradient.

    Returns:
        (f3, (sum w (X - t) r0, Q - sum w q, P - sum w p)) at the per-state maximizers
    """
    value, subgradient, _ = _dual_point(ensemble, power, noise, budget, beta, mu, lam, zeta, t)
    return value, subgradient


def _dual_point(
    ensemble: StateEnsemble,
    power: float,
    noise: NoiseModel,
    budget: float,
    beta: float,
    mu: float,
    lam: float,
    zeta: float,
    t: float,
) -> tuple[float, np.ndarray, SubproblemResult]:
    sub = dual_subproblem_p3(ensemble, noise, beta, mu, lam, zeta, t)
    w = ensemble.weights
    rate_slack = weighted_sum(w, (sub.success.astype(float) - t) * sub.rate)
    budget_slack = budget - weighted_sum(w, sub.q)
    power_slack = power - weighted_sum(w, sub.p)
    value = mu * rate_slack + lam * budget_slack + zeta * power_slack
    return value, np.array([rate_slack, budget_slack, power_slack]), sub


def feasibility_p33(
    ensemble: StateEnsemble,
    power: float,
    noise: NoiseModel,
    budget: float,
    beta: float,
    t: float,
    settings: Optional[EllipsoidSettings] = None,
) -> FeasibilityResult:
    """
    Decide whether relative rate t is reachable at water-filling level beta.

    f3 is positively homogeneous, so it is minimized over the unit ball
    with mu, lambda >= 0 and free zeta; a value below -1e-8 (1 + |Q| + P)
    proves infeasibility. Otherwise the tracked
    per-state responses are repaired to the budget, the transmitter is
    re-water-filled against each, and the best relative rate is kept.

    Returns:
        FeasibilityResult with duals (mu, lambda, zeta)
    """
    if not 0.0 <= t <= 1.0:
        raise ContractError(f"Relative-rate target must lie in [0, 1], got {t}")
    settings = settings or EllipsoidSettings()
    active = ensemble.with_perfect_sic()
    feas_tol = 1e-8 * (1.0 + abs(budget) + power)
    tracker = CandidateTracker()

    def oracle(x: np.ndarray) -> tuple[float, np.ndarray]:
        value, subgradient, sub = _dual_point(
            active, power, noise, budget, beta, x[0], x[1], x[2], t
        )
        violation = shortfall(subgradient[0], 1.0) + shortfall(subgradient[1], budget)
        tracker.offer(violation, sub.q, sub.success, sub.rate)
        return value, subgradient

    result = ellipsoid_minimize(
        oracle,
        settings.unit_ball(3),
        size_tol=settings.size_tol,
        max_iter=settings.max_iter,
        early_exit=-feas_tol,
        nonneg=(True, True, False),
        bound=1.0,
    )
    duals = tuple(float(v) for v in result.point)
    if result.status is EllipsoidStatus.EARLY_EXIT:
        logger.debug(
            f"Water-filling check beta={beta:.6g} t={t:.6f}: "
            f"infeasible ({result.iterations} iterations)"
        )
        return FeasibilityResult(FeasibilityStatus.INFEASIBLE, duals, result.iterations)

    final = dual_subproblem_p3(active, noise, beta, *duals, t)
    candidates = [(final.q, final.success, final.rate)] + tracker.candidates()

    level = level_from_beta(beta)
    r_free = rate_at_level(active, 0.0, level, noise)
    best_q: Optional[np.ndarray] = None
    best_rate = -math.inf
    for q, success, r0 in candidates:
        benefit = (1.0 - t) * r0 + t * r_free
        repaired = repair_budget(active.weights, q, success, benefit, budget)
        policy = JammingPolicy(q=repaired)
        profile = waterfill(active, policy, power, noise)
        achieved = relative_rate(active, profile.p, repaired, noise)
        if achieved > best_rate:
            best_q, best_rate = repaired, achieved

    return FeasibilityResult(
        FeasibilityStatus.FEASIBLE,
        duals,
        result.iterations,
        policy=JammingPolicy(q=best_q, label="optimal"),
        achieved=best_rate,
    )


@dataclass(frozen=True, eq=False)
class _BetaOutcome:
    point: BetaScanPoint
    policy: JammingPolicy
    duals: tuple[float, float, float]


def _solve_at_beta(
    ensemble: StateEnsemble,
    power: float,
    noise: NoiseModel,
    budget: float,
    beta: float,
    t_tol: float,
    settings: Optional[EllipsoidSettings],
) -> _BetaOutcome:
    n = len(ensemble)
    passive = JammingPolicy.zeros(n, label="optimal")
    profile = waterfill(ensemble, passive, power, noise)
    best = _BetaOutcome(
        point=BetaScanPoint(
            beta=beta,
            t_achieved=relative_rate(ensemble, profile.p, passive.q, noise),
            feasible_tmax=0.0,
            avg_jam_power=0.0,
        ),
        policy=passive,
        duals=(0.0, 0.0, 0.0),
    )

    lo, hi = 0.0, 1.0
    while hi - lo > t_tol:
        t = 0.5 * (lo + hi)
        result = feasibility_p33(ensemble, power, noise, budget, beta, t, settings)
        if not result.feasible:
            hi = t
            continue
        lo = t
        if result.policy is not None and result.achieved > best.point.t_achieved:
            best = _BetaOutcome(
                point=BetaScanPoint(
                    beta=beta,
                    t_achieved=result.achieved,
                    feasible_tmax=lo,
                    avg_jam_power=result.policy.average_power(ensemble.weights),
                ),
                policy=result.policy,
                duals=(result.duals[0], result.duals[1], result.duals[2]),
            )

    point = BetaScanPoint(
        beta=beta,
        t_achieved=best.point.t_achieved,
        feasible_tmax=lo,
        avg_jam_power=best.point.avg_jam_power,
    )
    logger.debug(f"beta={beta:.6g}: t achieved {point.t_achieved:.4f}, feasible up to {lo:.4f}")
    return _BetaOutcome(point=point, policy=best.policy, duals=best.duals)


def solve_wf(
    ensemble: StateEnsemble,
    power: float,
    noise: NoiseModel,
    budget: float,
    beta_grid_size: int = BETA_GRID_SIZE,
    t_tol: float = T_TOL,
    refine: bool = False,
    settings: Optional[EllipsoidSettings] = None,
    threads: int = 1,
) -> WfSolution:
    """
    Maximize the relative eavesdropping rate against a water-filling transmitter.

    Scans a uniform beta grid on [beta_min, beta_max], runs the
    t-bisection at each point and keeps the best (ties go to the smaller
    beta). With `refine`, a golden-section search runs between the
    neighbours of the grid argmax.

    Args:
        ensemble: Fading states (phi is ignored)
        power: Average transmit power P > 0
        noise: Receiver noise powers
        budget: Average jamming power Q >= 0
        beta_grid_size: Number of grid points (>= 3)
        t_tol: Bisection tolerance on t
        refine: Run golden-section refinement around the grid argmax
        settings: Ellipsoid stopping rule
        threads: Worker threads for the beta grid

    Returns:
        WfSolution with the policy, beta*, t*, duals, beta regime and scan
    """
    _check_power(power)
    if not math.isfinite(budget) or budget < 0.0:
        raise ContractError(f"Jamming budget must be finite and >= 0, got {budget}")
    if beta_grid_size < 3:
        raise ContractError(f"beta_grid_size must be >= 3, got {beta_grid_size}")

    active = ensemble.with_perfect_sic()
    upper = beta_max(active, power, noise)
    lower = beta_min(active, power, noise, budget, settings)

    def solve(beta: float) -> _BetaOutcome:
        return _solve_at_beta(active, power, noise, budget, beta, t_tol, settings)

    if lower >= upper:
        grid = np.array([upper])
    else:
        grid = np.linspace(lower, upper, beta_grid_size)
        grid[-1] = upper

    if threads > 1 and grid.size > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(solve, grid.tolist()))
    else:
        outcomes = [solve(beta) for beta in grid.tolist()]

    best = outcomes[0]
    for outcome in outcomes[1:]:
        if outcome.point.t_achieved > best.point.t_achieved:
            best = outcome

    if refine and grid.size >= 3:
        k = int(np.argmax([o.point.t_achieved for o in outcomes]))
        a, b = float(grid[max(k - 1, 0)]), float(grid[min(k + 1, grid.size - 1)])
        refined: dict[float, _BetaOutcome] = {}

        def objective(beta: float) -> float:
            refined[beta] = solve(beta)
            return refined[beta].point.t_achieved

        beta_ref, t_ref = golden_section_maximize(objective, a, b, tol_rel=1e-3, max_iter=8)
        if t_ref > best.point.t_achieved:
            best = refined[beta_ref]

    profile = waterfill(active, best.policy, power, noise)
    solution = WfSolution(
        policy=best.policy,
        beta_star=best.point.beta,
        t_star=relative_rate(active, profile.p, best.policy.q, noise),
        duals=best.duals,
        beta_regime=(lower, upper),
        beta_scan=[o.point for o in outcomes],
        profile=profile,
    )
    logger.info(
        f"Water-filling solver: Q={budget:.6g}, P={power:.6g}, t* {solution.t_star:.4f} "
        f"at beta {solution.beta_star:.6g} (regime [{lower:.6g}, {upper:.6g}])"
    )
    return solution
