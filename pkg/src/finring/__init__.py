"""Finite ring engine: unit decompositions, radicals and claim checking."""

__version__ = "0.1.0"
