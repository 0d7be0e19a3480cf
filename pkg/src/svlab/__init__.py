"""Hilbert functions, Nochka weights and second main theorem checks for rational curves."""

__version__ = "0.1.0"
