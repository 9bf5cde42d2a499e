"""Folded hypercubes, their perfect matchings, and hypercube-isomorphism certificates."""

__version__ = "0.1.0"
