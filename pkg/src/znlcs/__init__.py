"""Generalized-CHSH games over Z_n: strategies, groups, certificates."""

__version__ = "0.1.0"
