"""Exact character tables, Brauer p-blocks and character heights for permutation groups."""

__version__ = "0.1.0"
