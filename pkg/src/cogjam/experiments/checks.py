"""
Post-hoc sanity checks on finished sweeps.

These never fail a run; each violated expectation becomes a warning that
is logged and returned to the caller.
"""

from typing import Callable, Sequence
import logging

from ..models.policy import EvalReport

logger = logging.getLogger(__name__)

Objective = Callable[[EvalReport], float]


def _warn(messages: list[str], message: str) -> None:
    logger.warning(message)
    messages.append(message)


def check_dominance(
    points: Sequence[Sequence[EvalReport]],
    optimal_label: str,
    objective: Objective,
    tol: float,
) -> list[str]:
    """The optimal row must beat every other row at each sweep point, up to tol."""
    messages: list[str] = []
    for rows in points:
        optimal = next((r for r in rows if r.label == optimal_label), None)
        if optimal is None:
            continue
        for row in rows:
            if row is optimal:
                continue
            if objective(row) > objective(optimal) + tol:
                _warn(
                    messages,
                    f"Q={row.budget:g}: {row.label} ({objective(row):.6f}) beats "
                    f"{optimal_label} ({objective(optimal):.6f})",
                )
    return messages


def check_monotone(values: Sequence[float], name: str, tol: float = 1e-9) -> list[str]:
    """Values must be non-decreasing along the sweep."""
    messages: list[str] = []
    for i in range(1, len(values)):
        if values[i] < values[i - 1] - tol:
            _warn(
                messages,
                f"{name} decreases between sweep points {i - 1} and {i} "
                f"({values[i - 1]:.6f} -> {values[i]:.6f})",
            )
    return messages


def check_unimodal(values: Sequence[float], name: str, band: float = 0.01) -> list[str]:
    """Values should rise to a single maximum and then fall, within a noise band."""
    if len(values) < 3:
        return []
    peak = max(range(len(values)), key=lambda i: values[i])
    rising = all(values[i] >= values[i - 1] - band for i in range(1, peak + 1))
    falling = all(values[i] <= values[i - 1] + band for i in range(peak + 1, len(values)))
    if rising and falling:
        return []
    messages: list[str] = []
    _warn(messages, f"{name} is not unimodal within a band of {band:g}")
    return messages


def check_ordering(
    first: Sequence[float], second: Sequence[float], name: str, tol: float
) -> list[str]:
    """first[i] >= second[i] - tol at every sweep point."""
    messages: list[str] = []
    for i, (a, b) in enumerate(zip(first, second)):
        if a < b - tol:
            _warn(messages, f"{name} violated at sweep point {i} ({a:.6f} < {b:.6f})")
    return messages
