"""Online jamming: probe-based learning of the required power and threshold adaptation."""

from .probing import ProbeOracle, ProbeResult, learn_required, probe_required
from .threshold import run_online

__all__ = [
    "ProbeOracle",
    "ProbeResult",
    "learn_required",
    "probe_required",
    "run_online",
]
