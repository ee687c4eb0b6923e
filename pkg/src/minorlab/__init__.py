"""Finite workbench for graph minors on truncations of the half-grid
counterexample to ubiquity of locally finite graphs."""

__version__ = "0.1.0"
