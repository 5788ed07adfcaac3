"""Lie-derivative calculus and GENERIC thermo-visco-elastoplasticity on periodic grids."""

__version__ = "0.1.0"
