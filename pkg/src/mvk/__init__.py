"""Arbitrary-precision toolkit for alternating multiple mixed values."""

__version__ = "0.1.0"
