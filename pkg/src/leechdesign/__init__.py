"""Exact construction and verification of a weighted two-shell 6-design
in R^22 built from the Leech lattice, together with its coherent
configuration, its uniqueness enumeration, and the companion antipodal
7-design on S^22."""

__version__ = "0.1.0"
