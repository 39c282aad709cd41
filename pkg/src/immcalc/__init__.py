"""Exact computations for moduli spaces of immersed surfaces."""

__version__ = "0.1.0"
