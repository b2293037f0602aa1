"""Exact computations with Kakeya sets over finite fields."""

__version__ = "0.1.0"
