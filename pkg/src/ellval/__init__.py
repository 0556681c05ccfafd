"""Valuation-theoretic computations on elliptic curves over valued fields."""

__version__ = "0.1.0"
