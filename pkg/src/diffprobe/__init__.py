"""Numerical probes of differentiability at a point for black-box functions."""

__version__ = "0.1.0"
