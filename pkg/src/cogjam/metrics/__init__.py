"""Link quantities, policy evaluation and baseline jamming schemes."""

from .link import (
    SUCCESS_RTOL,
    sinr_receiver,
    snr_monitor,
    rate,
    success_indicator,
    free_success,
)
from .evaluation import evaluate_policy, relative_rate, suspicious_rates
from .baselines import (
    JammingScheme,
    ConstantJamming,
    OnOffJamming,
    PassiveJamming,
    SCHEMES,
    build_schemes,
    baseline_constant,
    baseline_onoff,
    baseline_passive,
)

__all__ = [
    "SUCCESS_RTOL",
    "sinr_receiver",
    "snr_monitor",
    "rate",
    "success_indicator",
    "free_success",
    "evaluate_policy",
    "relative_rate",
    "suspicious_rates",
    "JammingScheme",
    "ConstantJamming",
    "OnOffJamming",
    "PassiveJamming",
    "SCHEMES",
    "build_schemes",
    "baseline_constant",
    "baseline_onoff",
    "baseline_passive",
]
