"""Exact and numeric tools for matrix representations of Clifford algebras of binary forms."""

from .fields import FieldSpec, field, make_field
from .forms import BinaryForm, curve_points, genus, is_nondegenerate
from .pencil import MatrixPencil, clifford_check
from .representations import Representation, clock_shift, conjugate, direct_sum, gl2_pullback, random_equivalent

__version__ = "0.1.0"

__all__ = [
    "BinaryForm",
    "FieldSpec",
    "MatrixPencil",
    "Representation",
    "clifford_check",
    "clock_shift",
    "conjugate",
    "curve_points",
    "direct_sum",
    "field",
    "genus",
    "gl2_pullback",
    "is_nondegenerate",
    "make_field",
    "random_equivalent",
]
