"""Exact symbolic engine for twisted mKdV flows on populations of critical points."""

__version__ = "0.1.0"
