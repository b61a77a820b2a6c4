"""Permutation-group factorisations, arc-transitive map certificates, and
orbital graph identification."""

__version__ = "0.1.0"
