"""Exact commutative algebra for multiple-point schemes of finite maps and
linkage by determinantal minors."""

from .config import RunConfig
from .fields import PrimeField, Rationals, parse_field
from .ideals import FractionalIdeal, Ideal, QuotientRing
from .matrices import ModulePresentation, PolyMatrix
from .polyring import Poly, Ring, make_ring

__version__ = "0.1.0"

__all__ = [
    "FractionalIdeal",
    "Ideal",
    "ModulePresentation",
    "Poly",
    "PolyMatrix",
    "PrimeField",
    "QuotientRing",
    "Rationals",
    "RunConfig",
    "Ring",
    "make_ring",
    "parse_field",
]
