"""Jamming-power optimizers for the non-outage and relative-rate objectives."""

from .fixed import (
    SubproblemResult,
    dual_subproblem_p2,
    dual_value_p2,
    failure_power,
    feasibility_p22,
    solve_fixed,
)
from .outage import required_power, required_power_si, solve_outage
from .recovery import CandidateTracker, repair_budget
from .waterfill import (
    beta_max,
    beta_min,
    dual_subproblem_p3,
    dual_value_p3,
    feasibility_beta,
    feasibility_p33,
    kill_power,
    power_at_level,
    rate_at_level,
    solve_wf,
    waterfill,
)

__all__ = [
    "SubproblemResult",
    "dual_subproblem_p2",
    "dual_value_p2",
    "failure_power",
    "feasibility_p22",
    "solve_fixed",
    "required_power",
    "required_power_si",
    "solve_outage",
    "CandidateTracker",
    "repair_budget",
    "beta_max",
    "beta_min",
    "dual_subproblem_p3",
    "dual_value_p3",
    "feasibility_beta",
    "feasibility_p33",
    "kill_power",
    "power_at_level",
    "rate_at_level",
    "solve_wf",
    "waterfill",
]
