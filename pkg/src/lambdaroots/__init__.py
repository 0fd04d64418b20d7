"""Least prime lambda-roots, Dirichlet characters, Rosser's sieve weights."""

__version__ = "0.1.0"
