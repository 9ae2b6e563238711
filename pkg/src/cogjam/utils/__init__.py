"""Utility modules."""

from .exceptions import (
    CogJamError,
    ConfigurationError,
    ContractError,
    EnsembleIOError,
    ReportGenerationError,
    SolverError,
    BracketError,
    ConvergenceError,
    NumericalError,
    SizeError,
)
from .logging_config import setup_logging, get_logger
from .summation import weighted_sum, total, RunningMean
from .units import db_to_linear, linear_to_db, dbm_to_watts, watts_to_dbm

__all__ = [
    "CogJamError",
    "ConfigurationError",
    "ContractError",
    "EnsembleIOError",
    "ReportGenerationError",
    "SolverError",
    "BracketError",
    "ConvergenceError",
    "NumericalError",
    "SizeError",
    "setup_logging",
    "get_logger",
    "weighted_sum",
    "total",
    "RunningMean",
    "db_to_linear",
    "linear_to_db",
    "dbm_to_watts",
    "watts_to_dbm",
]
