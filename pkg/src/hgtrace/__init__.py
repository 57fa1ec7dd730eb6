"""Exact finite-field hypergeometric sums and Hecke traces on arithmetic triangle groups."""

__version__ = "0.1.0"
