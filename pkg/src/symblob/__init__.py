"""Exact computations for the symplectic blob algebra."""

__version__ = "0.1.0"
