"""Exact skein algebra and quantum lattice gauge computations."""

from .cli import main

__all__ = ["main"]
