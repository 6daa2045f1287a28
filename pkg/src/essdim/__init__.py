"""Exact root-system, Weyl-group and lattice tools for essential-dimension bounds."""

from .rootsys import DomainError, DynkinType, RootSystem, build
from .weyl import Refusal

__all__ = ["DomainError", "DynkinType", "Refusal", "RootSystem", "build"]
__version__ = "0.1.0"
