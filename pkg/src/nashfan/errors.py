"""Exceptions raised by the engine.

Every error is a ``ValueError`` so callers that only guard against bad input keep working;
the subclasses name the mathematical reason.
"""


class NashFanError(ValueError):
    pass


class NotPrime(NashFanError):
    pass


class DenominatorNotInvertible(NashFanError):
    pass


class DivisionByZero(NashFanError, ZeroDivisionError):
    pass


class FieldMismatch(NashFanError):
    pass


class AmbientMismatch(NashFanError):
    pass


class NotStrictlyConvex(NashFanError):
    pass


class NotInSemigroup(NashFanError):
    pass


class InvalidSemigroup(NashFanError):
    pass


class InvalidOrder(NashFanError):
    pass


class ZeroPolynomial(NashFanError):
    pass


class NonIntegralWeight(NashFanError):
    pass


class DimensionUnsupported(NashFanError):
    pass


class EmptyInterior(NashFanError):
    pass


class NonTermination(NashFanError):
    """A step budget ran out. Never expected; signals an engine bug."""


class RegularCone(NashFanError):
    pass


class InvariantViolation(NashFanError):
    """A mathematical invariant failed at run time."""


class ParityError(NashFanError):
    pass
