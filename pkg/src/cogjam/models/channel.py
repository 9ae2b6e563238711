"""Fading states and weighted state ensembles."""

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterator, Optional, Sequence
import math

import numpy as np
from numpy.typing import ArrayLike

from ..utils.exceptions import ContractError

GAIN_FIELDS = ("g0", "g1", "g2", "phi")
WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class FadingState:
    """
    One joint fading realization.

    g0 is the suspicious Tx to Rx gain, g1 the suspicious Tx to monitor
    eavesdrop antenna gain, g2 the monitor jamming antenna to suspicious Rx
    gain and phi the effective loop-back gain left after self-interference
    cancellation (0 means perfect cancellation). All gains are linear.
    """

    g0: float
    g1: float
    g2: float
    phi: float = 0.0

    def __post_init__(self) -> None:
        for name in GAIN_FIELDS:
            value = float(getattr(self, name))
            if not math.isfinite(value) or value < 0.0:
                raise ContractError(f"Gain {name} must be finite and >= 0, got {value}")
            object.__setattr__(self, name, value)


def _frozen_vector(values: ArrayLike, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float, copy=True)
    if arr.ndim != 1:
        raise ContractError(f"{name} must be one-dimensional, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StateEnsemble:
    """
    Weighted finite sample of fading states.

    Gains are stored column-wise so per-state formulas vectorize over the
    whole ensemble; every expectation in the solvers is a weighted sum over
    these columns. Arrays are read-only after construction.
    """

    g0: np.ndarray
    g1: np.ndarray
    g2: np.ndarray
    phi: np.ndarray
    weights: np.ndarray
    seed: Optional[int] = None
    label: str = ""

    def __post_init__(self) -> None:
        for name in (*GAIN_FIELDS, "weights"):
            object.__setattr__(self, name, _frozen_vector(getattr(self, name), name))

        n = self.g0.size
        if n == 0:
            raise ContractError("Ensemble must contain at least one state")
        for name in (*GAIN_FIELDS, "weights"):
            if getattr(self, name).size != n:
                raise ContractError(
                    f"Column {name} has {getattr(self, name).size} entries, expected {n}"
                )

        for name in GAIN_FIELDS:
            column = getattr(self, name)
            if not np.all(np.isfinite(column)) or np.any(column < 0.0):
                raise ContractError(f"Gains in column {name} must be finite and >= 0")

        if not np.all(np.isfinite(self.weights)) or np.any(self.weights <= 0.0):
            raise ContractError("Weights must be finite and strictly positive")
        weight_sum = math.fsum(self.weights.tolist())
        if abs(weight_sum - 1.0) > WEIGHT_SUM_TOL:
            raise ContractError(f"Weights must sum to 1, got {weight_sum!r}")

    @classmethod
    def uniform(
        cls,
        g0: ArrayLike,
        g1: ArrayLike,
        g2: ArrayLike,
        phi: Optional[ArrayLike] = None,
        seed: Optional[int] = None,
        label: str = "",
    ) -> "StateEnsemble":
        """Build an equally weighted ensemble from gain columns."""
        g0_arr = np.asarray(g0, dtype=float)
        n = g0_arr.size
        if n == 0:
            raise ContractError("Ensemble must contain at least one state")
        phi_arr = np.zeros(n) if phi is None else np.asarray(phi, dtype=float)
        return cls(
            g0=g0_arr,
            g1=g1,
            g2=g2,
            phi=phi_arr,
            weights=np.full(n, 1.0 / n),
            seed=seed,
            label=label,
        )

    @classmethod
    def from_states(
        cls,
        states: Sequence[FadingState],
        weights: Optional[ArrayLike] = None,
        seed: Optional[int] = None,
        label: str = "",
    ) -> "StateEnsemble":
        """Build an ensemble from individual states (uniform weights by default)."""
        if not states:
            raise ContractError("Ensemble must contain at least one state")
        columns = {name: [getattr(s, name) for s in states] for name in GAIN_FIELDS}
        if weights is None:
            return cls.uniform(seed=seed, label=label, **columns)
        return cls(weights=np.asarray(weights, dtype=float), seed=seed, label=label, **columns)

    def __len__(self) -> int:
        return int(self.g0.size)

    def __getitem__(self, index: int) -> FadingState:
        return FadingState(
            g0=float(self.g0[index]),
            g1=float(self.g1[index]),
            g2=float(self.g2[index]),
            phi=float(self.phi[index]),
        )

    def __iter__(self) -> Iterator[FadingState]:
        for i in range(len(self)):
            yield self[i]

    @property
    def states(self) -> list[FadingState]:
        """All states in ensemble order."""
        return list(self)

    @property
    def has_self_interference(self) -> bool:
        """True when any state carries residual loop-back gain."""
        return bool(np.any(self.phi > 0.0))

    def with_perfect_sic(self) -> "StateEnsemble":
        """Copy of the ensemble with phi set to zero everywhere."""
        if not self.has_self_interference:
            return self
        return replace(self, phi=np.zeros(len(self)))

    def subset(self, indices: Sequence[int]) -> "StateEnsemble":
        """
        Select states by index and renormalize their weights.

        Args:
            indices: State indices to keep, in the order to keep them

        Returns:
            New ensemble over the selected states
        """
        idx = np.asarray(indices, dtype=int)
        if idx.size == 0:
            raise ContractError("Subset must select at least one state")
        weights = self.weights[idx]
        return StateEnsemble(
            g0=self.g0[idx],
            g1=self.g1[idx],
            g2=self.g2[idx],
            phi=self.phi[idx],
            weights=weights / math.fsum(weights.tolist()),
            seed=self.seed,
            label=self.label,
        )

    def to_csv(self, path: Path) -> Path:
        """Write the ensemble as `index,weight,g0,g1,g2,phi` CSV."""
        from ..channel.io import write_ensemble

        return write_ensemble(self, path)

    @classmethod
    def from_csv(cls, path: Path, seed: Optional[int] = None) -> "StateEnsemble":
        """Read an ensemble written by to_csv."""
        from ..channel.io import read_ensemble

        return read_ensemble(path, seed=seed)
