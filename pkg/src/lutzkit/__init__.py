"""Exact-arithmetic contact surgery calculus and open book transformations."""

__version__ = "0.1.0"
