"""Data models for fading ensembles, policies and solver results."""

from .channel import FadingState, StateEnsemble
from .policy import (
    EVAL_COLUMNS,
    NoiseModel,
    JammingPolicy,
    TxMode,
    TxPowerProfile,
    EvalReport,
)
from .solutions import (
    OutageSolution,
    FeasibilityStatus,
    FeasibilityResult,
    BisectionStep,
    FixedPowerSolution,
    WaterfillProfile,
    BetaScanPoint,
    WfSolution,
    OnlineSummary,
    OnlineTrace,
)

__all__ = [
    "FadingState",
    "StateEnsemble",
    "EVAL_COLUMNS",
    "NoiseModel",
    "JammingPolicy",
    "TxMode",
    "TxPowerProfile",
    "EvalReport",
    "OutageSolution",
    "FeasibilityStatus",
    "FeasibilityResult",
    "BisectionStep",
    "FixedPowerSolution",
    "WaterfillProfile",
    "BetaScanPoint",
    "WfSolution",
    "OnlineSummary",
    "OnlineTrace",
]
