"""Galois-type correspondences for finite field extensions in prime characteristic."""

__version__ = "0.1.0"
