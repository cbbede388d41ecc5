"""Exception hierarchy shared by every module."""

from typing import Optional


class HopfError(Exception):
    """Base class for all errors raised by coco-hopf."""

    def __init__(self, message: str, reference: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.reference = reference

    def to_dict(self) -> dict:
        """JSON-friendly description of the error."""
        payload = {"error": type(self).__name__, "message": self.message}
        if self.reference is not None:
            payload["reference"] = self.reference
        return payload


class InputError(HopfError):
    """The input is malformed; nothing mathematical was decided."""


class MathematicalCheckFailed(HopfError):
    """A mathematical property required by the operation does not hold."""


# Input errors

class MalformedStructure(InputError):
    pass


class FieldMismatch(InputError):
    pass


class AmbientMismatch(InputError):
    pass


class NotComposable(InputError):
    pass


class OrderBound(InputError):
    pass


class UnknownReference(InputError):
    pass


class InvalidMorphism(InputError):
    pass


# Failed checks

class NotInvertible(MathematicalCheckFailed):
    pass


class DoesNotFactor(MathematicalCheckFailed):
    pass


class NotNormal(MathematicalCheckFailed):
    pass


class NotSurjective(MathematicalCheckFailed):
    pass


class NotInE(MathematicalCheckFailed):
    pass


class InvalidMeasuring(MathematicalCheckFailed):
    pass


class InvalidCocycle(MathematicalCheckFailed):
    pass


class NotTwistedModule(MathematicalCheckFailed):
    pass


class NotASection(MathematicalCheckFailed):
    pass


class SectionNotCoalgebra(MathematicalCheckFailed):
    pass


class ValuesEscapeKernel(MathematicalCheckFailed):
    pass


class NotASetSection(MathematicalCheckFailed):
    pass


class CheckFailed(MathematicalCheckFailed):
    """An internal consistency assertion between two computations failed."""
