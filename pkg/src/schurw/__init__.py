"""Exact vertex-operator realizations of W-type operators on Schur and Q-functions."""

__version__ = "0.1.0"
