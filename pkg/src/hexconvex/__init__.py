"""Generating functions for convex hexagonal polyominoes, by area and
half-perimeter, for every symmetry class of the dihedral group of order 12,
with an exhaustive lattice enumeration to check them against."""

__version__ = "0.1.0"
