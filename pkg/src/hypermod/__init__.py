"""Exact rational models for section spaces of projectivized first-jet
bundles, their degreewise Betti numbers, certified comparison ranges,
Hilbert polynomials, and stable Poincare series."""

__version__ = "0.1.0"
