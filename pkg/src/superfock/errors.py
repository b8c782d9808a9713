"""Shared exception types."""


class SuperfockError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(SuperfockError, ZeroDivisionError):
    pass


class VariableMismatch(SuperfockError):
    pass


class UnsupportedK(SuperfockError):
    pass


class UnsupportedExponent(SuperfockError):
    pass


class TruncationOverflow(SuperfockError):
    """A result would land at or above the weight truncation of a space."""


class NonHomogeneous(SuperfockError):
    pass


class InsufficientTerms(SuperfockError):
    pass


class InvalidIndexLattice(SuperfockError):
    pass


class InvalidAlgebra(SuperfockError):
    pass


class NoCalibration(SuperfockError):
    pass


class NonDiagonal(SuperfockError):
    pass


class RelationFailure(SuperfockError):
    pass
