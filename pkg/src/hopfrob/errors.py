"""Exception hierarchy shared across the package."""


class HopfrobError(Exception):
    """Base class for all library errors."""


class FieldMismatchError(HopfrobError):
    """Two operands live over different fields."""


class ShapeError(HopfrobError):
    """Dimensions of an operation do not line up."""


class SingularError(HopfrobError):
    """A matrix that must be invertible is not."""


class InvalidInputError(HopfrobError):
    """Structurally or mathematically corrupt input data."""


class InternalCheckError(HopfrobError):
    """A construction failed one of its own consistency checks.

    Raised when two independent routes to the same object disagree; this
    signals a bug, not bad user input.
    """


class InconclusiveSearchError(HopfrobError):
    """A bounded brute-force search hit its documented bound.

    Never a negative theorem: the witness may exist beyond the bound.
    """
