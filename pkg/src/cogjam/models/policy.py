"""Noise model, jamming policies, transmit power profiles and evaluation reports."""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Optional
import math

import numpy as np
from numpy.typing import ArrayLike

from ..utils.exceptions import ContractError
from ..utils.summation import weighted_sum

# Column order of every EvalReport CSV row
EVAL_COLUMNS = [
    "label",
    "Q",
    "non_outage",
    "avg_rate_suspicious",
    "avg_rate_eavesdrop",
    "relative_rate",
    "avg_jam_power",
]

BUDGET_RTOL = 1e-9


@dataclass(frozen=True)
class NoiseModel:
    """AWGN powers at the suspicious receiver (sigma0_sq) and the monitor (sigma1_sq)."""

    sigma0_sq: float = 1.0
    sigma1_sq: float = 1.0

    def __post_init__(self) -> None:
        for name in ("sigma0_sq", "sigma1_sq"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value <= 0.0:
                raise ContractError(f"Noise power {name} must be finite and > 0, got {value}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True, eq=False)
class JammingPolicy:
    """Per-state jamming powers q(v) >= 0, one entry per ensemble state."""

    q: np.ndarray
    label: str = ""

    def __post_init__(self) -> None:
        q = np.array(self.q, dtype=float, copy=True)
        if q.ndim != 1:
            raise ContractError(f"Jamming powers must be one-dimensional, got shape {q.shape}")
        if not np.all(np.isfinite(q)) or np.any(q < 0.0):
            raise ContractError("Jamming powers must be finite and >= 0")
        q.setflags(write=False)
        object.__setattr__(self, "q", q)

    @classmethod
    def zeros(cls, n_states: int, label: str = "passive") -> "JammingPolicy":
        """All-zero policy."""
        return cls(q=np.zeros(n_states), label=label)

    def __len__(self) -> int:
        return int(self.q.size)

    def average_power(self, weights: ArrayLike) -> float:
        """Weighted average jamming power."""
        weights = np.asarray(weights, dtype=float)
        if weights.size != self.q.size:
            raise ContractError(
                f"Policy has {self.q.size} entries but {weights.size} weights were given"
            )
        return weighted_sum(weights, self.q)


class TxMode(Enum):
    """How the suspicious transmitter spreads its average power over states."""

    FIXED = "fixed"
    WATERFILLING = "waterfilling"


@dataclass(frozen=True, eq=False)
class TxPowerProfile:
    """
    Per-state transmit powers of the suspicious link.

    `power` is the average power budget P the profile was built for;
    `beta` is the water-filling dual parameter and is present iff the mode
    is WATERFILLING.
    """

    p: np.ndarray
    mode: TxMode
    power: float
    beta: Optional[float] = None

    def __post_init__(self) -> None:
        p = np.array(self.p, dtype=float, copy=True)
        if p.ndim != 1 or not np.all(np.isfinite(p)) or np.any(p < 0.0):
            raise ContractError("Transmit powers must be a finite, non-negative vector")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)
        if (self.mode is TxMode.WATERFILLING) != (self.beta is not None):
            raise ContractError("beta must be given exactly for water-filling profiles")
        if self.beta is not None and not (math.isfinite(self.beta) and self.beta > 0.0):
            raise ContractError(f"Water-filling beta must be finite and > 0, got {self.beta}")

    @classmethod
    def fixed(cls, n_states: int, power: float) -> "TxPowerProfile":
        """Constant power P in every state."""
        if not power > 0.0:
            raise ContractError(f"Transmit power must be > 0, got {power}")
        return cls(p=np.full(n_states, float(power)), mode=TxMode.FIXED, power=float(power))

    def check_budget(self, weights: ArrayLike, rtol: float = BUDGET_RTOL) -> None:
        """
        Verify the weighted mean of p equals the budget P.

        Raises:
            ContractError: If lengths differ or the mean is off by more than rtol
        """
        weights = np.asarray(weights, dtype=float)
        if weights.size != self.p.size:
            raise ContractError(
                f"Profile has {self.p.size} entries but {weights.size} weights were given"
            )
        mean = weighted_sum(weights, self.p)
        if abs(mean - self.power) > rtol * self.power:
            raise ContractError(
                f"Average transmit power {mean!r} does not match budget {self.power!r}"
            )


@dataclass(frozen=True)
class EvalReport:
    """Aggregate performance of one jamming policy on one ensemble."""

    non_outage_prob: float
    avg_suspicious_rate: float
    avg_eavesdrop_rate: float
    relative_rate: float
    avg_jamming_power: float
    label: str = ""
    budget: float = math.nan

    def with_label(self, label: str, budget: Optional[float] = None) -> "EvalReport":
        """Copy carrying a scheme label and the sweep value it was computed at."""
        return replace(self, label=label, budget=self.budget if budget is None else budget)

    def as_row(self) -> dict[str, Any]:
        """CSV row keyed by EVAL_COLUMNS."""
        return {
            "label": self.label,
            "Q": self.budget,
            "non_outage": self.non_outage_prob,
            "avg_rate_suspicious": self.avg_suspicious_rate,
            "avg_rate_eavesdrop": self.avg_eavesdrop_rate,
            "relative_rate": self.relative_rate,
            "avg_jam_power": self.avg_jamming_power,
        }
