"""Exact affine Lambda-building computations for SL(n) over truncated
Puiseux series."""

__version__ = "0.1.0"
