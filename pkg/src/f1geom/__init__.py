"""Computational toolkit for geometry over the field with one element."""

__version__ = "0.1.0"
