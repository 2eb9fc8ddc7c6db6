"""Exact workbench for Hopf-algebra module categories, bounded complexes and
t-structure checks."""

__version__ = "0.1.0"
