"""Custom exceptions for the jamming solvers and experiment driver."""


class CogJamError(Exception):
    """Base exception for all package errors."""

    pass


class ConfigurationError(CogJamError):
    """Error in configuration."""

    pass


class ContractError(CogJamError):
    """A caller violated an operation's pre-condition."""

    pass


class EnsembleIOError(CogJamError):
    """Error reading or writing a serialized state ensemble."""

    pass


class ReportGenerationError(CogJamError):
    """Error writing a CSV report."""

    pass


class SolverError(CogJamError):
    """A solver could not produce a result."""

    pass


class BracketError(SolverError):
    """Bisection bracket does not contain a sign change."""

    pass


class ConvergenceError(SolverError):
    """Iteration cap exceeded before the tolerance was met."""

    pass


class NumericalError(SolverError):
    """Ellipsoid shape matrix lost symmetry or positive definiteness."""

    pass


class SizeError(SolverError):
    """Brute-force enumeration exceeds the combination cap."""

    pass
