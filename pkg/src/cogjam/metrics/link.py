"""
Per-state link quantities.

Every function takes anything with g0/g1/g2/phi attributes, so the same
code evaluates a single FadingState (Python floats in, Python values out)
or a whole StateEnsemble (numpy columns in, arrays out).
"""

from typing import Any, Protocol, Union

import numpy as np

from ..models.policy import NoiseModel

# Relative slack on the decoding comparison; jamming exactly to the
# required power must count as success despite rounding in the formula.
SUCCESS_RTOL = 1e-12

Value = Union[float, np.ndarray]


class Gains(Protocol):
    g0: Any
    g1: Any
    g2: Any
    phi: Any


def sinr_receiver(state: Gains, p: Value, q: Value, noise: NoiseModel) -> Value:
    """SINR at the suspicious receiver: g0 p / (g2 q + sigma0^2)."""
    return state.g0 * p / (state.g2 * q + noise.sigma0_sq)


def snr_monitor(state: Gains, p: Value, q: Value, noise: NoiseModel) -> Value:
    """
    SINR at the monitor: g1 p / (phi q + sigma1^2).

    With phi = 0 this is the SNR under perfect self-interference cancellation.
    """
    return state.g1 * p / (state.phi * q + noise.sigma1_sq)


def rate(ratio: Value) -> Value:
    """Achievable rate log2(1 + ratio) in bps/Hz."""
    result = np.log2(1.0 + np.asarray(ratio, dtype=float))
    return float(result) if result.ndim == 0 else result


def success_indicator(state: Gains, p: Value, q: Value, noise: NoiseModel) -> Any:
    """
    Whether the monitor can decode: snr_monitor >= sinr_receiver.

    For p > 0 the transmit power cancels from both sides, so the test is
    evaluated in the p-free form g1 (g2 q + sigma0^2) >= g0 (phi q + sigma1^2).
    Equality counts as success.

    Returns:
        bool for scalar inputs, boolean array for ensembles
    """
    lhs = state.g1 * (state.g2 * q + noise.sigma0_sq)
    rhs = state.g0 * (state.phi * q + noise.sigma1_sq)
    return lhs >= rhs * (1.0 - SUCCESS_RTOL)


def free_success(state: Gains, noise: NoiseModel) -> Any:
    """Whether the monitor decodes without any jamming (g0/sigma0^2 <= g1/sigma1^2)."""
    return state.g0 * noise.sigma1_sq <= state.g1 * noise.sigma0_sq
