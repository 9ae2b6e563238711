"""Threshold-adaptation jamming over a sequence of fading blocks."""

from typing import Iterable, Union
import logging

import numpy as np

from ..config import OnlineConfig, ThresholdUpdate
from ..models.channel import FadingState, StateEnsemble
from ..models.policy import NoiseModel
from ..models.solutions import OnlineTrace
from ..utils.exceptions import ContractError
from ..utils.summation import RunningMean
from .probing import ProbeOracle, learn_required

logger = logging.getLogger(__name__)


def run_online(
    blocks: Union[StateEnsemble, Iterable[FadingState]],
    noise: NoiseModel,
    config: OnlineConfig,
) -> OnlineTrace:
    """
    Run the online jamming algorithm for config.n_blocks blocks.

    In each block the monitor learns the required power q by probing and
    jams with it iff 0 < q <= tau. The threshold then follows the budget,
    never dropping below zero: by default it moves by chi (Q - q)/Q, a
    stochastic step on the dual price 1/tau that settles where the
    expected spend meets Q. The `running-average` rule instead moves it
    up by chi while the running average power (current block included)
    is below the budget and down by chi otherwise.

    Args:
        blocks: Fading states in block order (at least n_blocks of them)
        noise: Receiver noise powers
        config: Horizon, initial threshold, step, budget and probe schedule

    Returns:
        OnlineTrace with the per-block threshold, power, outcome, running
        average and probe count

    Raises:
        ContractError: If fewer than n_blocks blocks are given
    """
    states = list(blocks)
    n = config.n_blocks
    if len(states) < n:
        raise ContractError(f"Online run needs {n} blocks, got {len(states)}")

    tau_trace = np.empty(n)
    q_used = np.zeros(n)
    success = np.zeros(n, dtype=bool)
    running_avg = np.empty(n)
    probes = np.zeros(n, dtype=np.int64)

    tau = config.tau_init
    average = RunningMean()
    for i, state in enumerate(states[:n]):
        learned = learn_required(
            ProbeOracle(state, noise), config.probe_start, config.probe_tol, config.probe_cap
        )
        jam = 0.0 < learned.value <= tau
        tau_trace[i] = tau
        q_used[i] = learned.value if jam else 0.0
        success[i] = jam or learned.value == 0.0
        probes[i] = learned.probes

        running_avg[i] = average.add(q_used[i])
        tau = _next_threshold(tau, q_used[i], running_avg[i], config)

    trace = OnlineTrace(
        tau=tau_trace,
        q_used=q_used,
        success=success,
        running_avg=running_avg,
        probes=probes,
    )
    summary = trace.summary(config.tail_fraction)
    logger.info(
        f"Online run over {n} blocks: non-outage {summary.non_outage:.4f}, "
        f"average power {summary.avg_power:.6g} (budget {config.budget:.6g}), "
        f"tail threshold {summary.tail_mean_threshold:.6g}"
    )
    return trace


def _next_threshold(tau: float, spent: float, running_avg: float, config: OnlineConfig) -> float:
    if config.update is ThresholdUpdate.RUNNING_AVERAGE:
        step = config.chi if running_avg < config.budget else -config.chi
    elif config.budget > 0.0:
        step = config.chi * (config.budget - spent) / config.budget
    else:
        step = -config.chi if spent > 0.0 else 0.0
    return max(tau + step, 0.0)
