"""Result records returned by the solvers and the online algorithm."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional
import math

import numpy as np

from .policy import JammingPolicy, TxMode, TxPowerProfile


@dataclass(frozen=True, eq=False)
class OutageSolution:
    """
    Optimal jamming for the eavesdropping non-outage probability.

    `threshold` is 1/lambda_star and is infinite when the budget does not
    bind. `required` holds the per-state required jamming powers the
    threshold rule was applied to.
    """

    policy: JammingPolicy
    lambda_star: float
    threshold: float
    non_outage: float
    required: np.ndarray
    si: bool = False


class FeasibilityStatus(Enum):
    """Outcome of one dual feasibility test."""

    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True, eq=False)
class FeasibilityResult:
    """
    Outcome of a feasibility problem solved on its dual.

    `duals` is (mu, lambda) for the fixed-power problem and
    (mu, lambda, zeta) for the water-filling problem. `policy` and
    `achieved` (relative rate of the recovered policy) are set only when
    feasible.
    """

    status: FeasibilityStatus
    duals: tuple[float, ...]
    iterations: int
    policy: Optional[JammingPolicy] = None
    achieved: float = math.nan

    @property
    def feasible(self) -> bool:
        return self.status is FeasibilityStatus.FEASIBLE


@dataclass(frozen=True)
class BisectionStep:
    """One probe of the relative-rate target t."""

    t: float
    feasible: bool
    achieved: float = math.nan


@dataclass(frozen=True, eq=False)
class FixedPowerSolution:
    """Optimal jamming for the relative eavesdropping rate under fixed transmit power."""

    policy: JammingPolicy
    t_star: float
    mu_star: float
    lambda_star: float
    trace: list[BisectionStep] = field(default_factory=list)


@dataclass(frozen=True, eq=False)
class WaterfillProfile:
    """Water-filling transmit powers [level - (g2 q + sigma0^2)/g0]+ at level 1/(ln2 beta)."""

    beta: float
    p: np.ndarray
    power: float

    @property
    def level(self) -> float:
        return 1.0 / (math.log(2.0) * self.beta)

    def to_tx_profile(self) -> TxPowerProfile:
        return TxPowerProfile(p=self.p, mode=TxMode.WATERFILLING, power=self.power, beta=self.beta)


@dataclass(frozen=True)
class BetaScanPoint:
    """Inner t-bisection result at one grid value of beta."""

    beta: float
    t_achieved: float
    feasible_tmax: float
    avg_jam_power: float


@dataclass(frozen=True, eq=False)
class WfSolution:
    """Optimal jamming for the relative eavesdropping rate under a water-filling transmitter."""

    policy: JammingPolicy
    beta_star: float
    t_star: float
    duals: tuple[float, float, float]
    beta_regime: tuple[float, float]
    beta_scan: list[BetaScanPoint]
    profile: WaterfillProfile

    @property
    def beta_min(self) -> float:
        return self.beta_regime[0]

    @property
    def beta_max(self) -> float:
        return self.beta_regime[1]


@dataclass(frozen=True)
class OnlineSummary:
    """Final figures of an online run."""

    non_outage: float
    avg_power: float
    tail_mean_threshold: float


@dataclass(frozen=True, eq=False)
class OnlineTrace:
    """Per-block record of the threshold-adaptation algorithm."""

    tau: np.ndarray
    q_used: np.ndarray
    success: np.ndarray
    running_avg: np.ndarray
    probes: np.ndarray

    def __len__(self) -> int:
        return int(self.tau.size)

    def summary(self, tail_fraction: float = 0.1) -> OnlineSummary:
        """
        Summarize the run.

        Args:
            tail_fraction: Share of final blocks averaged for the threshold

        Returns:
            Final non-outage, final average power and tail-window mean threshold
        """
        n = len(self)
        tail = max(1, int(math.ceil(tail_fraction * n)))
        return OnlineSummary(
            non_outage=math.fsum(self.success.astype(float).tolist()) / n,
            avg_power=float(self.running_avg[-1]),
            tail_mean_threshold=math.fsum(self.tau[-tail:].tolist()) / tail,
        )

    def to_policy(self, label: str = "online") -> JammingPolicy:
        """Jamming powers actually used, as a policy over the block ensemble."""
        return JammingPolicy(q=self.q_used, label=label)
