"""Halphen transforms of space curves in P^3 with exact arithmetic."""

__version__ = "0.1.0"
