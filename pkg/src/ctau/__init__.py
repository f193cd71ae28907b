"""Exact computations around the motivic cofiber of tau at the prime 2."""

__version__ = "0.1.0"
