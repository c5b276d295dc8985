"""Exception hierarchy shared by every module of the package."""


class ModFormsError(ValueError):
    """Base class for all domain errors raised by :mod:`modforms`."""


class BadWeight(ModFormsError):
    pass


class BadDiscriminant(ModFormsError):
    pass


class BadPrime(ModFormsError):
    pass


class BadK(ModFormsError):
    pass


class BadN(ModFormsError):
    pass


class BadInput(ModFormsError):
    pass


class BadRange(ModFormsError):
    pass


class BadMatrix(ModFormsError):
    pass


class ZeroLeadingCoefficient(ModFormsError):
    pass


class OutOfPrecision(ModFormsError):
    pass


class OutOfGrid(ModFormsError):
    pass


class InsufficientPrecision(ModFormsError):
    pass


class NotInSpan(ModFormsError):
    pass


class UnsupportedDimension(ModFormsError):
    pass


class InternalInconsistency(ModFormsError):
    pass


class MissingPrime(ModFormsError):
    pass


class Inconclusive(ModFormsError):
    pass


class RatioMismatch(ModFormsError):
    pass


class NotInUpperHalfPlane(ModFormsError):
    pass


class InsufficientSeriesPrecision(ModFormsError):
    pass


class UnknownAtom(ModFormsError):
    pass


class FormSyntaxError(ModFormsError):
    """Parse failure in a form expression; ``position`` is a 1-based column."""

    def __init__(self, message, position):
        super().__init__(f"{message} at offset {position}")
        self.position = position
