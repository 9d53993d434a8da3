"""Combinatorics and Monte Carlo checks for fluctuation moments of
conjugated random matrices."""

__version__ = "0.1.0"
