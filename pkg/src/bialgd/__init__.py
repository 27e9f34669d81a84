"""Depth-two ring extensions, their bialgebroids, and Galois verification."""

__version__ = "0.1.0"
