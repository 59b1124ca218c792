"""hopfrob: exact structure-constant computations for finite-dimensional
Hopf algebras, their Frobenius systems, and their Drinfeld doubles."""

from .errors import (
    FieldMismatchError,
    HopfrobError,
    InconclusiveSearchError,
    InternalCheckError,
    InvalidInputError,
    ShapeError,
    SingularError,
)
from .scalars import GF, QQ, Field, PrimeField, RationalField, field_from_name

__all__ = [
    "Field",
    "RationalField",
    "PrimeField",
    "QQ",
    "GF",
    "field_from_name",
    "HopfrobError",
    "FieldMismatchError",
    "ShapeError",
    "SingularError",
    "InvalidInputError",
    "InternalCheckError",
    "InconclusiveSearchError",
]
