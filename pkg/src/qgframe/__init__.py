"""Finite-dimensional laboratory for multiplicative unitaries and quantum group frames."""

__version__ = "0.1.0"
