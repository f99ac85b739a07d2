"""Finite commutative rings, finite topologies, and exhaustive checks of
topological ring theorems on them."""

__version__ = "0.1.0"
