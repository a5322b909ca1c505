"""Exact verification of composable constraints on finite structures."""

__version__ = "0.1.0"
