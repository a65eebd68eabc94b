"""Repair regular C programs into HLS-compatible C."""

__version__ = "0.1.0"
