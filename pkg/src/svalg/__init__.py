"""Exact computations for the Schrödinger-Virasoro algebra."""

__version__ = "0.1.0"
