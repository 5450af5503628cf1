"""Exact p-adic L-invariants and generalized eigenforms for p-irregular weight-one CM forms."""

__version__ = "0.1.0"
