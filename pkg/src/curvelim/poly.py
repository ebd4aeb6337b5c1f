"""Exact polynomials in one, two (affine) or three (homogeneous) variables.

Every polynomial carries a *declared* degree.  The matrix constructions
downstream are sized by the declared degree, not by the support, so the
zero polynomial and polynomials with vanishing leading part are legal.

Monomials of a fixed degree are enumerated in :class:`MonomialOrder`:
first exponent descending, ties broken by the second exponent descending.
For degree 2 in three variables this is
``x0^2, x0*x1, x0*x2, x1^2, x1*x2, x2^2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np

from .errors import DegreeMismatch, NotHomogeneous, PolySyntaxError, SingularMatrix
from .scalars import GaussianRational, format_scalar, to_exact

__all__ = [
    "MonomialOrder",
    "monomials",
    "UniPoly",
    "AffinePoly2",
    "HomPoly3",
    "parse_poly",
    "evaluate",
    "coefficient_vector",
    "homogenize",
    "dehomogenize",
    "linear_change",
    "compose",
    "add",
    "mul",
]


@lru_cache(maxsize=None)
def monomials(degree: int, nvars: int = 3) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples of total ``degree`` in ``nvars`` variables, ordered."""
    if degree < 0:
        return ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(degree - first, nvars - 1):
            out.append((first,) + rest)
    return tuple(out)


@dataclass(frozen=True)
class MonomialOrder:
    degree: int
    nvars: int = 3

    @cached_property
    def monomials(self) -> tuple[tuple[int, ...], ...]:
        return monomials(self.degree, self.nvars)

    @cached_property
    def _positions(self) -> dict:
        return {m: k for k, m in enumerate(self.monomials)}

    def index(self, exponent: tuple[int, ...]) -> int:
        return self._positions[tuple(exponent)]

    def __len__(self) -> int:
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)


def _clean(coeffs: Mapping) -> dict:
    out = {}
    for e, c in coeffs.items():
        c = c if isinstance(c, (Fraction, GaussianRational, complex, float)) else to_exact(c)
        if c != 0:
            out[tuple(int(k) for k in e)] = c
    return out


class _Poly:
    """Sparse polynomial: exponent tuple -> coefficient, plus declared degree."""

    nvars: int = 0
    variables: tuple[str, ...] = ()

    def __init__(self, coeffs: Mapping, degree: int | None = None):
        terms = _clean(coeffs)
        for e in terms:
            if len(e) != self.nvars:
                raise ValueError(f"exponent {e} has wrong arity for {type(self).__name__}")
            if any(k < 0 for k in e):
                raise ValueError(f"negative exponent {e}")
        actual = max((sum(e) for e in terms), default=0)
        if degree is None:
            degree = actual
        if degree < actual:
            raise DegreeMismatch(f"declared degree {degree} below actual degree {actual}")
        self._terms = terms
        self.degree = int(degree)

    @property
    def coeffs(self) -> Mapping:
        return MappingProxyType(self._terms)

    def coeff(self, exponent) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    @property
    def actual_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def _new(self, coeffs, degree):
        out = type(self)(coeffs, degree)
        if "variables" in self.__dict__:
            out.variables = self.variables
        return out

    def __eq__(self, other):
        if not isinstance(other, _Poly) or other.nvars != self.nvars:
            return NotImplemented
        return self.degree == other.degree and self._terms == other._terms

    def __hash__(self):
        return hash((type(self).__name__, self.degree, frozenset(self._terms.items())))

    def __neg__(self):
        return self._new({e: -c for e, c in self._terms.items()}, self.degree)

    def __add__(self, other):
        if not isinstance(other, _Poly):
            other = self._new({(0,) * self.nvars: to_exact(other)}, 0)
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, _Poly):
            other = self._new({(0,) * self.nvars: to_exact(other)}, 0)
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _Poly):
            return mul(self, other)
        c = other if isinstance(other, (Fraction, GaussianRational, complex, float)) else to_exact(other)
        return self._new({e: v * c for e, v in self._terms.items()}, self.degree)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = self._new({(0,) * self.nvars: Fraction(1)}, 0)
        for _ in range(k):
            result = mul(result, self)
        return result

    def __call__(self, *point):
        return evaluate(self, point)

    def _sort_key(self, e):
        return tuple(-k for k in e)

    def to_text(self) -> str:
        """Canonical text in the polynomial grammar (round-trips through the parser)."""
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, key=self._sort_key):
            c = self._terms[e]
            if isinstance(c, GaussianRational) and c.imag != 0:
                raise ValueError("the polynomial grammar has no complex literals")
            c = Fraction(c.real) if isinstance(c, GaussianRational) else c
            factors = [
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            ]
            mag = abs(c)
            if factors and mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([format_scalar(mag)] + factors)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"{type(self).__name__}({self.to_text()!r}, degree={self.degree})"


class UniPoly(_Poly):
    """Univariate polynomial ``c0 + c1*x + ... + cn*x^n`` of declared degree n."""

    nvars = 1
    variables = ("x",)

    def __init__(self, coefficients, degree: int | None = None):
        if isinstance(coefficients, Mapping):
            super().__init__(coefficients, degree)
            return
        coefficients = list(coefficients)
        if degree is None:
            degree = max(len(coefficients) - 1, 0)
        super().__init__({(i,): c for i, c in enumerate(coefficients)}, degree)

    @property
    def coefficients(self) -> list:
        """``[c0, ..., cn]`` padded with zeros up to the declared degree."""
        return [self.coeff((i,)) for i in range(self.degree + 1)]

    def _sort_key(self, e):
        return (-e[0],)


class AffinePoly2(_Poly):
    """Polynomial in ``x1, x2`` with total degree bounded by the declared degree."""

    nvars = 2
    variables = ("x1", "x2")

    def _sort_key(self, e):
        # homogenized monomial order
        return (-(self.degree - e[0] - e[1]), -e[0], -e[1])


class HomPoly3(_Poly):
    """Homogeneous form in ``x0, x1, x2`` of declared degree n."""

    nvars = 3
    variables = ("x0", "x1", "x2")

    def __init__(self, coeffs: Mapping, degree: int | None = None):
        super().__init__(coeffs, degree)
        for e in self._terms:
            if sum(e) != self.degree:
                raise NotHomogeneous(
                    f"monomial {e} has degree {sum(e)}, expected {self.degree}"
                )

    @classmethod
    def linear(cls, a, b, c) -> "HomPoly3":
        return cls({(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c}, 1)

    @classmethod
    def monomial(cls, exponent, coeff=1) -> "HomPoly3":
        return cls({tuple(exponent): coeff}, sum(exponent))


def add(p: _Poly, q: _Poly) -> _Poly:
    if p.nvars != q.nvars:
        raise ValueError("polynomials over different variable sets")
    if isinstance(p, HomPoly3) and p.degree != q.degree:
        if q.is_zero():
            return p
        if p.is_zero():
            return q
        raise NotHomogeneous(f"sum of forms of degrees {p.degree} and {q.degree}")
    terms = dict(p.coeffs)
    for e, c in q.coeffs.items():
        terms[e] = terms.get(e, 0) + c
    return p._new(terms, max(p.degree, q.degree))


def mul(p: _Poly, q: _Poly) -> _Poly:
    if p.nvars != q.nvars:
        raise ValueError("polynomials over different variable sets")
    terms: dict = {}
    for e1, c1 in p.coeffs.items():
        for e2, c2 in q.coeffs.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            terms[e] = terms.get(e, 0) + c1 * c2
    return p._new(terms, p.degree + q.degree)


def evaluate(p: _Poly, point):
    """Value of ``p`` at ``point`` (exact for exact points, complex for floats)."""
    point = tuple(point)
    if len(point) != p.nvars:
        raise ValueError(f"point of arity {len(point)} for a {p.nvars}-variable polynomial")
    if point and not isinstance(point[0], (complex, float, np.floating, np.complexfloating)):
        point = tuple(to_exact(v) if not isinstance(v, (Fraction, GaussianRational)) else v for v in point)
    total = Fraction(0)
    for e, c in p.coeffs.items():
        term = c
        for v, k in zip(point, e):
            if k:
                term = term * v**k
        total = total + term
    return total


def coefficient_vector(p: HomPoly3, order: MonomialOrder | None = None) -> np.ndarray:
    if order is None:
        order = MonomialOrder(p.degree, p.nvars)
    if order.degree != p.degree:
        raise DegreeMismatch(f"order of degree {order.degree} for a form of degree {p.degree}")
    v = np.empty(len(order), dtype=object)
    for k, e in enumerate(order.monomials):
        v[k] = p.coeff(e)
    return v


def homogenize(p: AffinePoly2, n: int | None = None) -> HomPoly3:
    """x0-homogenization to declared degree ``n`` (default: p's declared degree)."""
    if n is None:
        n = p.degree
    if n < p.actual_degree:
        raise DegreeMismatch(f"cannot homogenize degree {p.actual_degree} polynomial to degree {n}")
    return HomPoly3({(n - a - b, a, b): c for (a, b), c in p.coeffs.items()}, n)


def dehomogenize(p: HomPoly3) -> AffinePoly2:
    """Set ``x0 = 1``."""
    terms: dict = {}
    for (_, a, b), c in p.coeffs.items():
        terms[(a, b)] = terms.get((a, b), 0) + c
    return AffinePoly2(terms, p.degree)


def compose(q: HomPoly3, forms: Sequence[HomPoly3]) -> HomPoly3:
    """Substitute ``x_k <- forms[k]`` into ``q``; the result has degree ``q.degree * d``."""
    if len(forms) != 3:
        raise ValueError("need three forms")
    d = forms[0].degree
    if any(f.degree != d for f in forms):
        raise DegreeMismatch("substituted forms must share a degree")
    one = HomPoly3({(0, 0, 0): 1}, 0)
    powers = []
    for f in forms:
        pw = [one]
        for _ in range(q.degree):
            pw.append(mul(pw[-1], f))
        powers.append(pw)
    result = HomPoly3({}, q.degree * d)
    for (a, b, c), coef in q.coeffs.items():
        term = mul(mul(powers[0][a], powers[1][b]), powers[2][c])
        result = add(result, term * coef)
    return result


def linear_change(p: HomPoly3, A) -> HomPoly3:
    """``p(A x)``: substitute ``x_k <- sum_j A[k, j] x_j``."""
    from .linalg import det, exact_matrix, is_exact

    A = np.asarray(A)
    if not is_exact(A):
        A = exact_matrix(A.tolist())
    if A.shape != (3, 3):
        raise ValueError("linear change needs a 3x3 matrix")
    if det(A) == 0:
        raise SingularMatrix("coordinate change must be invertible")
    forms = [HomPoly3.linear(A[k, 0], A[k, 1], A[k, 2]) for k in range(3)]
    return compose(p, forms)


# -- parser -----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<var>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str):
    pos = 0
    tokens = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = tuple(variables)
        self.nvars = len(self.variables)
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(msg, tok[2], self.text)

    def const(self, c):
        return {(0,) * self.nvars: c} if c != 0 else {}

    def parse(self) -> dict:
        if self.peek()[0] == "end":
            self.error("empty expression")
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("num", "var") or tok[1] == "(":
                self.error("implicit multiplication is not allowed; use '*'")
            self.error(f"unexpected {tok[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = _dict_add(value, rhs if op == "+" else _dict_scale(rhs, -1))
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            value = _dict_mul(value, self.unary())
        return value

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            inner = self.unary()
            return inner if tok[1] == "+" else _dict_scale(inner, -1)
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num" or "/" in tok[1]:
                self.error("exponent must be a nonnegative integer", tok)
            result = self.const(Fraction(1))
            for _ in range(int(tok[1])):
                result = _dict_mul(result, base)
            return result
        return base

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            num, _, den = val.partition("/")
            if den and int(den) == 0:
                self.error("zero denominator", tok)
            return self.const(Fraction(int(num), int(den) if den else 1))
        if kind == "var":
            if val not in self.variables:
                self.error(f"unknown variable {val!r} (expected one of {', '.join(self.variables)})", tok)
            e = [0] * self.nvars
            e[self.variables.index(val)] = 1
            return {tuple(e): Fraction(1)}
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if close[1] != ")":
                self.error("expected ')'", close)
            return inner
        if kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected {val!r}", tok)


def _dict_add(a, b):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v == 0:
            out.pop(e, None)
        else:
            out[e] = v
    return out


def _dict_scale(a, s):
    return {e: c * s for e, c in a.items()}


def _dict_mul(a, b):
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


def parse_terms(text: str, variables: Sequence[str]) -> dict:
    """Parse ``text`` into a dict mapping exponent tuples to Fractions."""
    return _Parser(text, variables).parse()


def parse_poly(text: str, variables: Sequence[str] = ("x0", "x1", "x2"), degree: int | None = None):
    """Parse polynomial text.

    The returned type follows the variable count: one name gives a
    :class:`UniPoly`, ``("x1", "x2")`` an :class:`AffinePoly2`, and three names
    a :class:`HomPoly3` (homogeneity is checked).  ``degree`` sets the declared
    degree; it defaults to the actual degree (0 for the zero polynomial).
    """
    variables = tuple(variables)
    terms = parse_terms(text, variables)
    cls = {1: UniPoly, 2: AffinePoly2, 3: HomPoly3}.get(len(variables))
    if cls is None:
        raise ValueError("one, two or three variables are supported")
    if cls is HomPoly3 and degree is None and terms:
        degrees = {sum(e) for e in terms}
        if len(degrees) > 1:
            raise NotHomogeneous(f"terms of degrees {sorted(degrees)} in {text!r}")
    p = cls(terms, degree)
    if cls is UniPoly:
        p.variables = variables
    return p
