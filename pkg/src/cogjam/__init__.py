"""Cognitive jamming for proactive eavesdropping over fading channels."""

__version__ = "0.1.0"
