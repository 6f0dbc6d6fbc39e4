"""Watchdog vs I-Watchdog intrusion detection in power-aware hierarchical WSNs."""

__version__ = "0.1.0"
