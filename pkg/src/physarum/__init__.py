"""Physarum-style growth simulator with classical-geometry oracles."""

__version__ = "0.1.0"
