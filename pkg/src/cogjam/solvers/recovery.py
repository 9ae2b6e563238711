"""
Primal recovery helpers shared by the dual solvers.

The dual subproblems return extreme per-state responses; a budget-feasible
policy is rebuilt from the responses seen along the dual search and then
repaired so its average jamming power never exceeds the budget.
"""

from dataclasses import dataclass, field
import heapq
import itertools
import math

import numpy as np

from ..utils.summation import weighted_sum

DEFAULT_KEEP = 8
BUDGET_RTOL = 1e-12


@dataclass(order=True)
class _Entry:
    neg_violation: float
    order: int
    q: np.ndarray = field(compare=False)
    success: np.ndarray = field(compare=False)
    rate: np.ndarray = field(compare=False)


class CandidateTracker:
    """Keeps the dual iterates whose primal responses violate the constraints least."""

    def __init__(self, keep: int = DEFAULT_KEEP):
        self.keep = keep
        self._heap: list[_Entry] = []
        self._counter = itertools.count()

    def __len__(self) -> int:
        return len(self._heap)

    def offer(self, violation: float, q: np.ndarray, success: np.ndarray, rate: np.ndarray) -> None:
        """Record a response if it is among the `keep` least violating ones so far."""
        if not math.isfinite(violation):
            return
        if len(self._heap) >= self.keep and violation >= -self._heap[0].neg_violation:
            return
        entry = _Entry(-violation, next(self._counter), q.copy(), success.copy(), rate.copy())
        if len(self._heap) < self.keep:
            heapq.heappush(self._heap, entry)
        else:
            heapq.heapreplace(self._heap, entry)

    def candidates(self) -> list[tuple[np.ndarray, np.ndarray, np.ndarray]]:
        """(q, success, rate) triples, least violating first."""
        ordered = sorted(self._heap, key=lambda e: (-e.neg_violation, e.order))
        return [(e.q, e.success, e.rate) for e in ordered]


def shortfall(slack: float, scale: float) -> float:
    """Relative violation of an inequality written as slack >= 0."""
    return max(0.0, -slack) / max(scale, 1e-12)


def repair_budget(
    weights: np.ndarray,
    q: np.ndarray,
    success: np.ndarray,
    benefit: np.ndarray,
    budget: float,
) -> np.ndarray:
    """
    Bring a jamming allocation within the average budget.

    Powers of states that do not reach decoding are scaled down first. If
    that is not enough they are dropped and successful jams are removed in
    decreasing order of cost per unit benefit.

    Args:
        weights: State probabilities
        q: Jamming powers
        success: Whether each state is decodable at its power
        benefit: Objective value of keeping each successful jam
        budget: Average jamming power Q

    Returns:
        Repaired copy of q with weighted mean <= Q (up to 1e-12 relative)
    """
    q = np.array(q, dtype=float, copy=True)
    limit = budget + BUDGET_RTOL * max(1.0, budget)
    spent = weighted_sum(weights, q)
    if spent <= limit:
        return q

    excess = spent - budget
    failing = (q > 0.0) & ~success
    failing_power = weighted_sum(weights[failing], q[failing])
    if failing_power > excess:
        q[failing] *= (failing_power - excess) / failing_power
        if weighted_sum(weights, q) <= limit:
            return q
    q[failing] = 0.0
    if weighted_sum(weights, q) <= limit:
        return q

    jammed = np.flatnonzero(q > 0.0)
    cost = weights[jammed] * q[jammed]
    gain = np.maximum(weights[jammed] * benefit[jammed], 1e-300)
    order = jammed[np.argsort(-(cost / gain), kind="stable")]

    removed = np.cumsum(weights[order] * q[order])
    need = weighted_sum(weights, q) - budget
    n_drop = min(int(np.searchsorted(removed, need, side="left")) + 1, order.size)
    q[order[:n_drop]] = 0.0
    while n_drop < order.size and weighted_sum(weights, q) > limit:
        q[order[n_drop]] = 0.0
        n_drop += 1
    return q
