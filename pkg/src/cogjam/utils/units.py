"""Decibel conversions. Internal math is linear only."""

import math


def db_to_linear(value_db: float) -> float:
    """Power ratio in dB to linear."""
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    """Linear power ratio to dB; zero maps to -inf."""
    if value <= 0.0:
        return -math.inf
    return 10.0 * math.log10(value)


def dbm_to_watts(value_dbm: float) -> float:
    """Power in dBm to watts."""
    return 10.0 ** ((value_dbm - 30.0) / 10.0)


def watts_to_dbm(value: float) -> float:
    """Power in watts to dBm; zero maps to -inf."""
    if value <= 0.0:
        return -math.inf
    return 10.0 * math.log10(value) + 30.0
