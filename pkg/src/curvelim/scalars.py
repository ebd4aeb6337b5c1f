"""Exact scalars: rationals (``fractions.Fraction``) and Gaussian rationals.

Real rationals are plain ``Fraction`` objects.  ``GaussianRational`` is the
opt-in complex extension ``a + b*i`` with ``a, b`` rational.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Integral, Rational

__all__ = [
    "GaussianRational",
    "to_exact",
    "format_scalar",
    "parse_scalar",
    "is_exact_scalar",
]


class GaussianRational:
    __slots__ = ("real", "imag")

    def __init__(self, real=0, imag=0):
        object.__setattr__(self, "real", Fraction(real))
        object.__setattr__(self, "imag", Fraction(imag))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (Rational, Integral)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.real + o.real, self.imag + o.imag)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.real - o.real, self.imag - o.imag)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.real * o.real - self.imag * o.imag,
            self.real * o.imag + self.imag * o.real,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        norm = o.real * o.real + o.imag * o.imag
        if norm == 0:
            raise ZeroDivisionError("division by zero")
        num = self * o.conjugate()
        return GaussianRational(num.real / norm, num.imag / norm)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, Integral):
            return NotImplemented
        if k < 0:
            return GaussianRational(1) / (self ** (-k))
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __neg__(self):
        return GaussianRational(-self.real, -self.imag)

    def __pos__(self):
        return self

    def conjugate(self):
        return GaussianRational(self.real, -self.imag)

    def __abs__(self):
        return abs(complex(self))

    def __complex__(self):
        return complex(float(self.real), float(self.imag))

    def __bool__(self):
        return bool(self.real) or bool(self.imag)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.real == o.real and self.imag == o.imag

    def __hash__(self):
        if self.imag == 0:
            return hash(self.real)
        return hash((self.real, self.imag))

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


_RAT = r"[+-]?\d+(?:/\d+)?"
_GAUSS_RE = re.compile(rf"^\s*({_RAT})\s*([+-])\s*(\d+(?:/\d+)?)\s*\*\s*i\s*$")
_PURE_IMAG_RE = re.compile(rf"^\s*({_RAT})\s*\*\s*i\s*$")


def is_exact_scalar(x) -> bool:
    return isinstance(x, (Fraction, GaussianRational, Integral))


def to_exact(x):
    """Convert ``x`` to ``Fraction`` (or ``GaussianRational`` when complex).

    Accepts ints, Fractions, GaussianRationals, and strings in the
    ``"a/b"`` / ``"a/b+c/d*i"`` serialization.  Floats are rejected: they
    would silently smuggle rounding into exact computations.
    """
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (bool,)):
        return Fraction(int(x))
    if isinstance(x, Integral):
        return Fraction(int(x))
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot convert {x!r} ({type(x).__name__}) to an exact scalar")


def _format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Serialize an exact scalar: ``"a"``, ``"a/b"`` or ``"a/b+c/d*i"``."""
    if isinstance(x, GaussianRational):
        if x.imag == 0:
            return _format_rational(x.real)
        sign = "-" if x.imag < 0 else "+"
        return f"{_format_rational(x.real)}{sign}{_format_rational(abs(x.imag))}*i"
    return _format_rational(Fraction(x))


def parse_scalar(text: str):
    s = text.strip()
    m = _GAUSS_RE.match(s)
    if m:
        im = Fraction(m.group(3))
        if m.group(2) == "-":
            im = -im
        return GaussianRational(Fraction(m.group(1)), im)
    m = _PURE_IMAG_RE.match(s)
    if m:
        return GaussianRational(0, Fraction(m.group(1)))
    if re.fullmatch(_RAT, s):
        return Fraction(s)
    raise ValueError(f"not an exact scalar: {text!r}")
