"""Homology and cohomology of crossed modules over finite groups."""

__version__ = "0.1.0"
