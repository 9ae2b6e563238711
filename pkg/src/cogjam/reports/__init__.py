"""Report generation for experiment results."""

from .csv_writer import (
    BETA_SCAN_COLUMNS,
    SWEEP_P_COLUMNS,
    TRACE_COLUMNS,
    CsvReportWriter,
)

__all__ = ["CsvReportWriter", "BETA_SCAN_COLUMNS", "SWEEP_P_COLUMNS", "TRACE_COLUMNS"]
