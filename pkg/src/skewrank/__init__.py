"""Exact Waring decompositions of fundamental skew invariants of reflection groups."""

__version__ = "0.1.0"
