"""Exact computations with involutive knot-Floer-style complexes over F2."""

__version__ = "0.1.0"
