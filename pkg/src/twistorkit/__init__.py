"""Exact algebra of mixed twistor structures on the projective line."""

__version__ = "0.1.0"
