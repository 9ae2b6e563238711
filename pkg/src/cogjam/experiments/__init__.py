"""Experiment orchestration and post-hoc result checks."""

from .checks import check_dominance, check_monotone, check_ordering, check_unimodal
from .runner import ExperimentRunner, PartialRunError, RunResult

__all__ = [
    "ExperimentRunner",
    "PartialRunError",
    "RunResult",
    "check_dominance",
    "check_monotone",
    "check_ordering",
    "check_unimodal",
]
