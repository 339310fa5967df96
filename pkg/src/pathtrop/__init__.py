"""Exact tools for binomial inequalities between graph homomorphism numbers."""

__version__ = "0.1.0"
