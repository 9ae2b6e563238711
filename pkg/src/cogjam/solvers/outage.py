"""
Optimal jamming for the eavesdropping non-outage probability.

Each state either needs no jamming, can be made decodable with a known
required power c(v), or cannot be made decodable at all. Under an average
budget Q the optimal policy jams exactly c(v) on the cheapest states,
i.e. those with c(v) below a threshold 1/lambda*.
"""

from typing import Any
import logging
import math

import numpy as np

from ..metrics.link import Gains, success_indicator
from ..models.channel import StateEnsemble
from ..models.policy import JammingPolicy, NoiseModel
from ..models.solutions import OutageSolution
from ..numopt.bisection import BisectionSpec, bisect_monotone
from ..utils.exceptions import ContractError
from ..utils.summation import weighted_sum

logger = logging.getLogger(__name__)

BUDGET_RTOL = 1e-12


def _scalar_or_array(values: np.ndarray) -> Any:
    return float(values) if values.ndim == 0 else values


def required_power(state: Gains, noise: NoiseModel) -> Any:
    """
    Minimum jamming power for the monitor to decode under perfect cancellation.

    Returns (g0 sigma1^2 / g1 - sigma0^2) / g2. A value <= 0 means the monitor
    decodes without jamming; +inf means jamming cannot help (g1 = 0, or
    g2 = 0 with a positive numerator).
    """
    g0 = np.asarray(state.g0, dtype=float)
    g1 = np.asarray(state.g1, dtype=float)
    g2 = np.asarray(state.g2, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        numerator = g0 * noise.sigma1_sq / g1 - noise.sigma0_sq
        c = numerator / g2
    c = np.where(g2 == 0.0, np.where(numerator > 0.0, math.inf, numerator), c)
    c = np.where(g1 == 0.0, math.inf, c)
    return _scalar_or_array(c)


def required_power_si(state: Gains, noise: NoiseModel) -> Any:
    """
    Minimum jamming power for the monitor to decode with residual self-interference.

    Returns 0 when the monitor decodes without jamming, +inf when the
    loop-back is too strong for jamming to ever help (g1 g2 <= g0 phi),
    otherwise (g0 sigma1^2 - g1 sigma0^2) / (g1 g2 - g0 phi). States with
    phi = 0 use the perfect-cancellation formula so both paths agree exactly.
    """
    g0 = np.asarray(state.g0, dtype=float)
    g1 = np.asarray(state.g1, dtype=float)
    g2 = np.asarray(state.g2, dtype=float)
    phi = np.asarray(state.phi, dtype=float)

    numerator = g0 * noise.sigma1_sq - g1 * noise.sigma0_sq
    denominator = g1 * g2 - g0 * phi
    with np.errstate(divide="ignore", invalid="ignore"):
        general = np.where(
            numerator <= 0.0,
            0.0,
            np.where(denominator <= 0.0, math.inf, numerator / denominator),
        )
        perfect = np.maximum(np.asarray(required_power(state, noise), dtype=float), 0.0)
    return _scalar_or_array(np.where(phi == 0.0, perfect, general))


def solve_outage(
    ensemble: StateEnsemble, budget: float, noise: NoiseModel, si: bool = False
) -> OutageSolution:
    """
    Maximize the non-outage probability under an average jamming budget.

    States with 0 < c(v) < inf are sorted by c (ties by index) and jammed
    with exactly c(v) while the cumulative weighted cost fits the budget.
    lambda* is recovered by bisection on the dual residual
    Q - sum{w c : 0 < c < 1/lambda}, and is 0 when every candidate fits.

    Args:
        ensemble: Fading states and weights
        budget: Average jamming power Q >= 0
        noise: Receiver noise powers
        si: Account for residual self-interference (otherwise phi is ignored)

    Returns:
        OutageSolution with the policy, lambda*, threshold and non-outage
    """
    if not math.isfinite(budget) or budget < 0.0:
        raise ContractError(f"Jamming budget must be finite and >= 0, got {budget}")

    active = ensemble if si else ensemble.with_perfect_sic()
    c = np.atleast_1d(
        np.asarray(required_power_si(active, noise) if si else required_power(active, noise))
    )
    w = ensemble.weights

    candidates = np.flatnonzero((c > 0.0) & np.isfinite(c))
    order = candidates[np.argsort(c[candidates], kind="stable")]
    costs = w[order] * c[order]
    limit = budget + BUDGET_RTOL * max(1.0, budget)

    n_jam = int(np.searchsorted(np.cumsum(costs), limit, side="right"))
    while n_jam > 0 and math.fsum(costs[:n_jam].tolist()) > limit:
        n_jam -= 1

    q = np.zeros(len(ensemble))
    jammed = order[:n_jam]
    q[jammed] = c[jammed]

    if n_jam == order.size:
        lambda_star, threshold = 0.0, math.inf
    else:
        lambda_star = _dual_threshold(c[candidates], w[candidates], limit)
        threshold = 1.0 / lambda_star

    x = np.asarray(success_indicator(active, 1.0, q, noise), dtype=bool)
    non_outage = 1.0 if x.all() else weighted_sum(w, x)

    label = "optimal-si" if si else "optimal"
    solution = OutageSolution(
        policy=JammingPolicy(q=q, label=label),
        lambda_star=lambda_star,
        threshold=threshold,
        non_outage=non_outage,
        required=c,
        si=si,
    )
    logger.info(
        f"Outage solver ({label}): jammed {n_jam}/{candidates.size} candidate states, "
        f"non-outage {non_outage:.4f}, lambda* {lambda_star:.6g}"
    )
    return solution


def _dual_threshold(c: np.ndarray, w: np.ndarray, limit: float) -> float:
    """Bisect lambda on the residual limit - sum{w c : c < 1/lambda}."""

    def residual(lam: float) -> float:
        if lam <= 0.0:
            spent = math.fsum((w * c).tolist())
        else:
            mask = c < 1.0 / lam
            spent = math.fsum((w[mask] * c[mask]).tolist())
        return limit - spent

    spec = BisectionSpec(lo=0.0, hi=1.0 / float(np.min(c)), tol_abs=1e-300, tol_rel=1e-10)
    return bisect_monotone(residual, spec)
