"""
Baseline jamming schemes.

Each scheme turns an ensemble and an average budget Q into a
JammingPolicy without any optimization.
"""

from abc import ABC, abstractmethod
from typing import Iterable
import logging
import math

import numpy as np

from ..models.channel import StateEnsemble
from ..models.policy import JammingPolicy, NoiseModel
from ..utils.exceptions import ContractError
from .link import free_success

logger = logging.getLogger(__name__)


def _check_budget(budget: float) -> None:
    if not math.isfinite(budget) or budget < 0.0:
        raise ContractError(f"Jamming budget must be finite and >= 0, got {budget}")


class JammingScheme(ABC):
    """Abstract base class for baseline jamming schemes."""

    name: str = ""

    @abstractmethod
    def policy(self, ensemble: StateEnsemble, budget: float, noise: NoiseModel) -> JammingPolicy:
        """
        Build the scheme's policy.

        Args:
            ensemble: Fading states and weights
            budget: Average jamming power Q
            noise: Receiver noise powers

        Returns:
            Per-state jamming powers labelled with the scheme name
        """
        pass


class ConstantJamming(JammingScheme):
    """Jam with Q in every state."""

    name = "constant"

    def policy(self, ensemble: StateEnsemble, budget: float, noise: NoiseModel) -> JammingPolicy:
        _check_budget(budget)
        return JammingPolicy(q=np.full(len(ensemble), float(budget)), label=self.name)


class OnOffJamming(JammingScheme):
    """
    Stay silent where the monitor already decodes, spread Q evenly elsewhere.

    States with g0/sigma0^2 <= g1/sigma1^2 get nothing; the others share the
    budget in proportion to their weight so the average power is exactly Q.
    """

    name = "onoff"

    def policy(self, ensemble: StateEnsemble, budget: float, noise: NoiseModel) -> JammingPolicy:
        _check_budget(budget)
        needs = ~np.asarray(free_success(ensemble, noise), dtype=bool)
        q = np.zeros(len(ensemble))
        if budget > 0.0 and needs.any():
            remaining = math.fsum(ensemble.weights[needs].tolist())
            q[needs] = budget / remaining
        return JammingPolicy(q=q, label=self.name)


class PassiveJamming(JammingScheme):
    """Never jam."""

    name = "passive"

    def policy(self, ensemble: StateEnsemble, budget: float, noise: NoiseModel) -> JammingPolicy:
        return JammingPolicy.zeros(len(ensemble), label=self.name)


SCHEMES: dict[str, type[JammingScheme]] = {
    ConstantJamming.name: ConstantJamming,
    OnOffJamming.name: OnOffJamming,
    PassiveJamming.name: PassiveJamming,
}


def build_schemes(names: Iterable[str]) -> list[JammingScheme]:
    """
    Instantiate baseline schemes by name, keeping the given order.

    Raises:
        ContractError: If a name is unknown
    """
    schemes: list[JammingScheme] = []
    for name in names:
        if name not in SCHEMES:
            raise ContractError(f"Unknown baseline scheme '{name}'")
        schemes.append(SCHEMES[name]())
        logger.debug(f"Loaded baseline scheme: {name}")
    return schemes


def baseline_constant(ensemble: StateEnsemble, budget: float) -> JammingPolicy:
    """q(v) = Q for all states."""
    return ConstantJamming().policy(ensemble, budget, NoiseModel())


def baseline_onoff(ensemble: StateEnsemble, budget: float, noise: NoiseModel) -> JammingPolicy:
    """Equal-power jamming over the states that cannot be eavesdropped for free."""
    return OnOffJamming().policy(ensemble, budget, noise)


def baseline_passive(ensemble: StateEnsemble) -> JammingPolicy:
    """All-zero policy."""
    return PassiveJamming().policy(ensemble, 0.0, NoiseModel())
