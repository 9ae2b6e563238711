"""Numerical kernels: scalar searches, ellipsoid method, brute-force oracle."""

from .bisection import BisectionSpec, bisect_bracket, bisect_monotone, golden_section_maximize
from .ellipsoid import (
    Ellipsoid,
    EllipsoidSettings,
    EllipsoidStatus,
    EllipsoidResult,
    ellipsoid_minimize,
)
from .brute_force import BruteForceObjective, brute_force_jam

__all__ = [
    "BisectionSpec",
    "bisect_bracket",
    "bisect_monotone",
    "golden_section_maximize",
    "Ellipsoid",
    "EllipsoidSettings",
    "EllipsoidStatus",
    "EllipsoidResult",
    "ellipsoid_minimize",
    "BruteForceObjective",
    "brute_force_jam",
]
