"""Potts curves over finite fields: fields, PGL_2, automorphisms and moduli."""

from .errors import PottsError
from .field_tower import Field, FieldElem, make_field, parse_field_spec
from .poly_ring import Poly
from .potts_curve import PottsModel, classify_aut, is_isomorphic, j_invariant

__all__ = [
    "Field",
    "FieldElem",
    "Poly",
    "PottsError",
    "PottsModel",
    "classify_aut",
    "is_isomorphic",
    "j_invariant",
    "make_field",
    "parse_field_spec",
]
__version__ = "0.1.0"
