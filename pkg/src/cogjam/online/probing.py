"""
Learning the required jamming power by probing.

The monitor cannot see g0, g2 or phi. It only learns, for a trial jamming
power, whether it can then decode the suspicious link. ProbeOracle wraps
the hidden state and answers exactly that question.
"""

from dataclasses import dataclass
import logging
import math

from ..metrics.link import success_indicator
from ..models.channel import FadingState
from ..models.policy import NoiseModel
from ..utils.exceptions import ContractError

logger = logging.getLogger(__name__)

DEFAULT_START = 1e-2
DEFAULT_CAP = 1e6
DEFAULT_TOL = 1e-3


class ProbeOracle:
    """Answers decode-or-not for trial jamming powers on one hidden fading state."""

    def __init__(self, state: FadingState, noise: NoiseModel):
        self._state = state
        self._noise = noise
        self.probes = 0

    def succeeds(self, q: float) -> bool:
        """Whether the monitor decodes when jamming with power q."""
        self.probes += 1
        return bool(success_indicator(self._state, 1.0, q, self._noise))


@dataclass(frozen=True)
class ProbeResult:
    """Learned required power (0 if free, +inf if unreachable) and probes spent."""

    value: float
    probes: int


def learn_required(oracle: ProbeOracle, start: float, tol: float, cap: float) -> ProbeResult:
    """
    Learn the smallest jamming power at which the oracle reports success.

    Probes 0 first, then `start`. A failing start is doubled (the last step
    lands exactly on `cap`) until the oracle succeeds; a succeeding start is
    halved until it fails, at most log2(cap/start) times. The failing and
    succeeding pair is then bisected until its width is within `tol` of the
    upper end.

    Returns:
        ProbeResult with the upper end of the final bracket, 0 when no
        jamming is needed, or +inf when even `cap` does not work
    """
    if not (start > 0.0 and cap >= start and 0.0 < tol < 1.0):
        raise ContractError(f"Invalid probe schedule: start={start}, cap={cap}, tol={tol}")

    if oracle.succeeds(0.0):
        return ProbeResult(0.0, oracle.probes)

    if oracle.succeeds(start):
        hi = start
        lo = 0.5 * start
        halvings = max(int(math.floor(math.log2(cap / start))), 1)
        while oracle.succeeds(lo):
            hi = lo
            halvings -= 1
            if halvings == 0:
                logger.debug(f"Required power below {hi:.3g}, stopping the downward search")
                return ProbeResult(hi, oracle.probes)
            lo *= 0.5
    else:
        lo, hi = start, start
        while True:
            if hi >= cap:
                return ProbeResult(math.inf, oracle.probes)
            lo, hi = hi, min(2.0 * hi, cap)
            if oracle.succeeds(hi):
                break

    while hi - lo > tol * hi:
        mid = 0.5 * (lo + hi)
        if oracle.succeeds(mid):
            hi = mid
        else:
            lo = mid
    return ProbeResult(hi, oracle.probes)


def probe_required(
    state: FadingState,
    noise: NoiseModel,
    probe_tol: float = DEFAULT_TOL,
    probe_cap: float = DEFAULT_CAP,
    start: float = DEFAULT_START,
) -> ProbeResult:
    """
    Learn one state's required jamming power through a fresh probe oracle.

    Args:
        state: Hidden fading state
        noise: Receiver noise powers
        probe_tol: Relative width of the final bracket
        probe_cap: Largest power ever probed
        start: First non-zero probe power

    Returns:
        ProbeResult
    """
    return learn_required(ProbeOracle(state, noise), start, probe_tol, probe_cap)
