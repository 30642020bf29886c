"""Exact-arithmetic laboratory for loop-weighted walks."""

__version__ = "0.1.0"
