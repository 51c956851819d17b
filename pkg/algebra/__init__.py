"""
Algebra Module

Provides:
- weyl_core: normal-form arithmetic in A1, psi, tau/phi automorphisms, matrix oracle
- support_geometry: valuations, leading terms, Newton polygons, st/en, Dir/Succ/Pred, mass
- unipoly: univariate polynomials, k-th roots, distinct factor counts, power support checks
"""

from algebra.support_geometry import NEG_INFINITY, Direction, LatticePoint, NewtonPolygon
from algebra.unipoly import UniPoly
from algebra.weyl_core import X, Y, CommPoly, WeylElement

__all__ = [
    "NEG_INFINITY",
    "CommPoly",
    "Direction",
    "LatticePoint",
    "NewtonPolygon",
    "UniPoly",
    "WeylElement",
    "X",
    "Y",
]
