"""Policy evaluation into aggregate eavesdropping metrics."""

from typing import Optional
import logging
import math

import numpy as np

from ..models.channel import StateEnsemble
from ..models.policy import EvalReport, JammingPolicy, NoiseModel, TxPowerProfile
from ..utils.exceptions import ContractError
from ..utils.summation import weighted_sum
from .link import rate, sinr_receiver, success_indicator

logger = logging.getLogger(__name__)


def suspicious_rates(
    ensemble: StateEnsemble, p: np.ndarray, q: np.ndarray, noise: NoiseModel
) -> np.ndarray:
    """Per-state suspicious link rate r0(v); zero wherever p(v) = 0."""
    return np.asarray(rate(sinr_receiver(ensemble, p, q, noise)), dtype=float)


def relative_rate(
    ensemble: StateEnsemble, p: np.ndarray, q: np.ndarray, noise: NoiseModel
) -> float:
    """Average eavesdropped rate over average suspicious rate (0 if the latter is 0)."""
    r0 = suspicious_rates(ensemble, p, q, noise)
    x = success_indicator(ensemble, p, q, noise)
    avg_suspicious = weighted_sum(ensemble.weights, r0)
    if avg_suspicious <= 0.0:
        return 0.0
    return weighted_sum(ensemble.weights, r0 * x) / avg_suspicious


def evaluate_policy(
    ensemble: StateEnsemble,
    policy: JammingPolicy,
    tx: TxPowerProfile,
    noise: NoiseModel,
    label: Optional[str] = None,
) -> EvalReport:
    """
    Evaluate a jamming policy against a transmit power profile.

    Args:
        ensemble: Fading states and their weights
        policy: Per-state jamming powers
        tx: Per-state transmit powers of the suspicious link
        noise: Receiver noise powers
        label: Report label (defaults to the policy label)

    Returns:
        EvalReport with non-outage probability, average rates, relative
        rate and average jamming power

    Raises:
        ContractError: If policy or profile length differs from the ensemble,
            or the profile violates its average power budget
    """
    n = len(ensemble)
    if len(policy) != n or tx.p.size != n:
        raise ContractError(
            f"Length mismatch: ensemble {n}, policy {len(policy)}, transmit profile {tx.p.size}"
        )
    tx.check_budget(ensemble.weights)

    q = policy.q
    x = success_indicator(ensemble, tx.p, q, noise)
    r0 = suspicious_rates(ensemble, tx.p, q, noise)

    w = ensemble.weights
    avg_suspicious = weighted_sum(w, r0)
    avg_eavesdrop = weighted_sum(w, r0 * x)
    relative = avg_eavesdrop / avg_suspicious if avg_suspicious > 0.0 else 0.0

    report = EvalReport(
        non_outage_prob=weighted_sum(w, x),
        avg_suspicious_rate=avg_suspicious,
        avg_eavesdrop_rate=avg_eavesdrop,
        relative_rate=relative,
        avg_jamming_power=policy.average_power(w),
        label=policy.label if label is None else label,
    )
    if not math.isfinite(report.avg_suspicious_rate):
        raise ContractError("Average suspicious rate is not finite")
    logger.debug(
        f"Evaluated {report.label or 'policy'}: non-outage {report.non_outage_prob:.4f}, "
        f"relative rate {report.relative_rate:.4f}"
    )
    return report
