"""Frequency tiles, tiling verifiers and Riesz bounds for wavelet sets in the plane."""

__version__ = "0.1.0"
