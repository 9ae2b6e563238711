"""Exhaustive search over per-state jamming grids, used as an independent optimality oracle."""

from enum import Enum
from typing import Optional, Sequence
import logging
import math

import numpy as np

from ..metrics.link import rate, sinr_receiver, success_indicator
from ..models.channel import StateEnsemble
from ..models.policy import NoiseModel
from ..utils.exceptions import ContractError, SizeError

logger = logging.getLogger(__name__)

MAX_COMBINATIONS = 10**7
CHUNK_SIZE = 1 << 16


class BruteForceObjective(str, Enum):
    """Objective maximized by brute_force_jam."""

    NON_OUTAGE = "non_outage"
    RELATIVE_RATE_FIXED_P = "relative_rate_fixed_p"


def brute_force_jam(
    ensemble: StateEnsemble,
    budget: float,
    grid: Sequence[Sequence[float]],
    objective: BruteForceObjective,
    noise: NoiseModel,
    power: Optional[float] = None,
    max_combinations: int = MAX_COMBINATIONS,
) -> tuple[np.ndarray, float]:
    """
    Enumerate every combination of per-state candidate powers.

    Allocations whose weighted average power exceeds the budget are
    discarded; among the rest the objective maximizer that comes first in
    lexicographic order (state 0 most significant) is returned.

    Args:
        ensemble: Fading states and weights
        budget: Average jamming power Q
        grid: Candidate jamming powers, one sequence per state
        objective: Non-outage probability or relative rate at fixed power
        noise: Receiver noise powers
        power: Fixed transmit power P (required for the relative rate)
        max_combinations: Enumeration cap

    Returns:
        (best allocation, best objective value)

    Raises:
        SizeError: If the number of combinations exceeds the cap
        ContractError: If the grid does not match the ensemble or no
            allocation fits the budget
    """
    n = len(ensemble)
    if len(grid) != n:
        raise ContractError(f"Grid has {len(grid)} entries for {n} states")
    if objective is BruteForceObjective.RELATIVE_RATE_FIXED_P and power is None:
        raise ContractError("Relative-rate objective needs the fixed transmit power")

    candidates = [np.asarray(g, dtype=float) for g in grid]
    sizes = [c.size for c in candidates]
    if min(sizes) < 1:
        raise ContractError("Every state needs at least one candidate power")
    combinations = math.prod(sizes)
    if combinations > max_combinations:
        raise SizeError(f"{combinations} combinations exceed the cap of {max_combinations}")

    p = 1.0 if power is None else float(power)
    cost, numerator, denominator = [], [], []
    for j, powers in enumerate(candidates):
        state = ensemble[j]
        w = float(ensemble.weights[j])
        x = np.asarray(success_indicator(state, p, powers, noise), dtype=float)
        cost.append(w * powers)
        if objective is BruteForceObjective.NON_OUTAGE:
            numerator.append(w * x)
            denominator.append(np.zeros_like(powers))
        else:
            r0 = np.asarray(rate(sinr_receiver(state, p, powers, noise)), dtype=float)
            numerator.append(w * r0 * x)
            denominator.append(w * r0)

    limit = budget + 1e-12 * max(1.0, abs(budget))
    best_index, best_value = -1, -math.inf

    for start in range(0, combinations, CHUNK_SIZE):
        index = np.arange(start, min(start + CHUNK_SIZE, combinations), dtype=np.int64)
        digits = _decode(index, sizes)
        spent = np.zeros(index.size)
        num = np.zeros(index.size)
        den = np.zeros(index.size)
        for j in range(n):
            spent += cost[j][digits[j]]
            num += numerator[j][digits[j]]
            den += denominator[j][digits[j]]

        if objective is BruteForceObjective.NON_OUTAGE:
            value = num
        else:
            value = np.divide(num, den, out=np.zeros_like(num), where=den > 0.0)
        value = np.where(spent <= limit, value, -math.inf)

        k = int(np.argmax(value))
        if value[k] > best_value:
            best_index, best_value = int(index[k]), float(value[k])

    if best_index < 0:
        raise ContractError("No grid allocation fits within the budget")

    digits = _decode(np.array([best_index], dtype=np.int64), sizes)
    allocation = np.array([candidates[j][digits[j][0]] for j in range(n)])
    logger.debug(f"Brute force over {combinations} allocations: best value {best_value:.6g}")
    return allocation, best_value


def _decode(index: np.ndarray, sizes: Sequence[int]) -> list[np.ndarray]:
    """Mixed-radix digits of each index, state 0 most significant."""
    digits: list[np.ndarray] = [np.empty(0, dtype=np.int64)] * len(sizes)
    remainder = index.copy()
    for j in range(len(sizes) - 1, -1, -1):
        digits[j] = remainder % sizes[j]
        remainder //= sizes[j]
    return digits
