"""Standard determinantal representations used by tests and demos."""

from __future__ import annotations

from fractions import Fraction

from .detrep import DetRep

__all__ = ["conic", "cubic", "conic_point", "CONIC_EQUATION", "CUBIC_EQUATION", "CUBIC_RATIONAL_POINTS"]

CONIC_EQUATION = "x0^2 - x1^2 - x2^2"
CUBIC_EQUATION = "x0^3 - x0*x1^2 - 2*x0*x2^2 - x1*x2^2"
# rational points of the cubic, found by the fixture search script
CUBIC_RATIONAL_POINTS = ((0, 1, 0), (1, 1, 0), (1, -1, 0), (0, 0, 1))


def conic() -> DetRep:
    """``det = x0^2 - x1^2 - x2^2``; every rational point is ``conic_point(s, t)``."""
    return DetRep.from_rows(
        [[1, 0], [0, 1]],
        [[1, 0], [0, -1]],
        [[0, 1], [1, 0]],
    )


def cubic() -> DetRep:
    """A smooth (hence irreducible) plane cubic with a real symmetric pencil."""
    return DetRep.from_rows(
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 0, 0], [0, 1, 0], [0, 0, -1]],
        [[0, 0, 1], [0, 0, 1], [1, 1, 0]],
    )


def conic_point(s, t) -> tuple[Fraction, Fraction, Fraction]:
    """Point ``(s^2 + t^2, 2st, s^2 - t^2)`` of the conic fixture."""
    s, t = Fraction(s), Fraction(t)
    if s == 0 and t == 0:
        raise ValueError("(s, t) = (0, 0) is not a point of the projective line")
    return (s * s + t * t, 2 * s * t, s * s - t * t)
