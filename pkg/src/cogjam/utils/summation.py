"""
Weighted reductions over state ensembles.

All expectations are sums in fixed state order with exact rounding
(math.fsum) so aggregates do not depend on numpy's pairwise blocking.
"""

import math

import numpy as np
from numpy.typing import ArrayLike


def weighted_sum(weights: ArrayLike, values: ArrayLike) -> float:
    """
    Compute sum(w * v) with a correctly rounded final result.

    Args:
        weights: Per-state probability mass
        values: Per-state values (broadcast against weights)

    Returns:
        The weighted sum as a Python float
    """
    products = np.multiply(weights, values, dtype=float)
    return math.fsum(np.ravel(products).tolist())


def total(values: ArrayLike) -> float:
    """Correctly rounded sum of values."""
    return math.fsum(np.ravel(np.asarray(values, dtype=float)).tolist())


class RunningMean:
    """Compensated running sum for sequential averages."""

    def __init__(self) -> None:
        self._sum = 0.0
        self._compensation = 0.0
        self.count = 0

    def add(self, value: float) -> float:
        """Add a value and return the mean including it."""
        # Neumaier summation
        t = self._sum + value
        if abs(self._sum) >= abs(value):
            self._compensation += (self._sum - t) + value
        else:
            self._compensation += (value - t) + self._sum
        self._sum = t
        self.count += 1
        return self.mean

    @property
    def mean(self) -> float:
        """Current mean; zero before the first value."""
        if self.count == 0:
            return 0.0
        return (self._sum + self._compensation) / self.count
