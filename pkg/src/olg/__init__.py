"""Orbifold Landau-Ginzburg B-model algebra toolkit with exact arithmetic."""

__version__ = "0.1.0"
