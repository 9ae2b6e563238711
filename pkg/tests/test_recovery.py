"""Tests for primal recovery helpers of the dual solvers."""

import math

import numpy as np

from cogjam.solvers import CandidateTracker, repair_budget
from cogjam.solvers.recovery import shortfall


def test_within_budget_is_untouched():
    q = np.array([1.0, 0.0])

    repaired = repair_budget(np.array([0.5, 0.5]), q, np.array([True, True]), np.ones(2), 1.0)

    assert np.array_equal(repaired, q)
    assert repaired is not q


def test_failing_jams_are_scaled_first():
    repaired = repair_budget(
        np.array([0.5, 0.5]), np.array([2.0, 2.0]), np.array([True, False]), np.ones(2), 1.5
    )

    assert np.allclose(repaired, [2.0, 1.0])


def test_expensive_successes_are_dropped():
    weights = np.full(3, 1.0 / 3.0)

    repaired = repair_budget(
        weights, np.array([3.0, 1.0, 2.0]), np.array([True, True, True]), np.ones(3), 1.0
    )

    assert list(repaired) == [0.0, 1.0, 2.0]


def test_tracker_keeps_least_violating():
    tracker = CandidateTracker(keep=2)
    for violation in (0.5, 0.1, 0.3, math.inf):
        tracker.offer(violation, np.array([violation]), np.array([True]), np.array([1.0]))

    candidates = tracker.candidates()

    assert len(tracker) == 2
    assert [float(q[0]) for q, _, _ in candidates] == [0.1, 0.3]


def test_shortfall():
    assert shortfall(1.0, 2.0) == 0.0
    assert shortfall(-1.0, 2.0) == 0.5
