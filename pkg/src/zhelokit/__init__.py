"""Exact computations with Zhelobenko invariants, Kostant's problem and the
BGG-operator monoid for finite root systems."""
from __future__ import annotations

from .rootsys import CartanDatum, CartanError, RootSystem, cartan_datum

__all__ = ["CartanDatum", "CartanError", "RootSystem", "cartan_datum"]
__version__ = "0.1.0"
