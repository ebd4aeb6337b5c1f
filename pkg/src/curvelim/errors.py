"""Exception and warning types shared across the package."""

from __future__ import annotations


class CurveElimError(Exception):
    """Base class for every error raised by curvelim."""


class BackendMismatch(CurveElimError, TypeError):
    """Exact and floating matrices were combined in one operation."""


class NotInSpan(CurveElimError, ValueError):
    """A vector does not lie in the span of a basis."""


class NotSquare(CurveElimError, ValueError):
    pass


class SingularMatrix(CurveElimError, ValueError):
    pass


class DegreeMismatch(CurveElimError, ValueError):
    pass


class PolySyntaxError(CurveElimError, ValueError):
    """Malformed polynomial text. ``pos`` is the 0-based offset of the problem."""

    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


class NotHomogeneous(CurveElimError, ValueError):
    pass


class DegeneratePencil(CurveElimError, ValueError):
    """The determinant of a pencil vanishes identically."""


class PointNotOnCurve(CurveElimError, ValueError):
    pass


class LineInCurve(CurveElimError, ValueError):
    """A sampling line is contained in the curve."""


class TheoremViolation(CurveElimError, AssertionError):
    """A load-bearing structural identity failed (dimension or containment).

    Raised instead of silently continuing, because every later construction
    depends on these facts.
    """


class AllDenominatorsZero(CurveElimError, ValueError):
    pass


class DisagreementDetected(CurveElimError, ArithmeticError):
    pass


class Unsupported(CurveElimError, ValueError):
    pass


class InvalidBasepoint(CurveElimError, ValueError):
    pass


class CurveElimWarning(UserWarning):
    pass


class DegreeDropWarning(CurveElimWarning):
    """Leading coefficients vanish; counts may include zeros at infinity."""


class NonHermitianWarning(CurveElimWarning):
    pass


class ReducibleWarning(CurveElimWarning):
    pass


class BasepointWarning(CurveElimWarning):
    pass
