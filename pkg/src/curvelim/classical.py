"""Elimination for two polynomials in one variable.

Vandermonde vectors, the matrix of shifts, Sylvester and Bezout matrices,
the Kravitsky identity relating them, and the determinantal equation of
the image of the projective line under a map given by three binary forms.
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from math import factorial
from typing import Sequence

import numpy as np

from . import linalg
from .errors import DegreeDropWarning, DegreeMismatch, NotHomogeneous, TheoremViolation
from .poly import UniPoly, parse_terms
from .scalars import to_exact

__all__ = [
    "vandermonde",
    "shift_matrix",
    "sylvester",
    "resultant",
    "bezout",
    "bezout_telescoping",
    "exchange_matrix",
    "kravitsky_sides",
    "kravitsky_check",
    "count_common_roots",
    "parse_binary_form",
    "line_image_pencil",
]


def vandermonde(x, n: int, k: int = 0) -> np.ndarray:
    """Order-``k`` Vandermonde vector: entry i is the k-th derivative of x**i at x."""
    if n < 1:
        raise ValueError("n must be at least 1")
    exact = not isinstance(x, (complex, float))
    if exact:
        x = to_exact(x) if not isinstance(x, Fraction) else x
    v = np.empty(n, dtype=object if exact else complex)
    for i in range(n):
        if i < k:
            v[i] = Fraction(0) if exact else 0.0
        else:
            v[i] = (factorial(i) // factorial(i - k)) * x ** (i - k)
    return v


def _check_degrees(*polys: UniPoly) -> int:
    n = polys[0].degree
    if any(p.degree != n for p in polys):
        raise DegreeMismatch(f"declared degrees differ: {[p.degree for p in polys]}")
    return n


def _warn_degree_drop(*polys: UniPoly) -> None:
    for p in polys:
        if p.coeff((p.degree,)) == 0:
            warnings.warn(
                f"leading coefficient of {p} vanishes at declared degree {p.degree}; "
                "counts include zeros at infinity",
                DegreeDropWarning,
                stacklevel=3,
            )


def shift_matrix(p: UniPoly) -> np.ndarray:
    """``n x 2n`` matrix whose row k holds the coefficients of ``x^k * p``."""
    n = p.degree
    if n < 1:
        raise ValueError("shift matrix needs degree >= 1")
    c = p.coefficients
    T = linalg.zeros(n, 2 * n)
    for r in range(n):
        T[r, r:r + n + 1] = c
    return T


def sylvester(p: UniPoly, q: UniPoly) -> np.ndarray:
    _check_degrees(p, q)
    _warn_degree_drop(p, q)
    return np.vstack([shift_matrix(p), shift_matrix(q)])


def resultant(p: UniPoly, q: UniPoly):
    return linalg.det(sylvester(p, q))


def _antisym_coeffs(p: UniPoly, q: UniPoly) -> dict:
    """Coefficients of p(x)q(y) - q(x)p(y) as {(a, b): c} for x^a y^b."""
    pc, qc = p.coefficients, q.coefficients
    out: dict = {}
    for a, pa in enumerate(pc):
        for b, qb in enumerate(qc):
            c = pa * qb
            if c:
                out[(a, b)] = out.get((a, b), 0) + c
                out[(b, a)] = out.get((b, a), 0) - c
    return out


def bezout(p: UniPoly, q: UniPoly, check: bool = False) -> np.ndarray:
    """Bezout matrix with ``p(x)q(y) - q(x)p(y) = sum b_ij x^i (x - y) y^j``.

    Computed by matching coefficients of x^a y^b and solving the resulting
    linear system for the n^2 unknowns.  ``check=True`` cross-checks against
    the telescoping construction.
    """
    n = _check_degrees(p, q)
    if n < 1:
        raise ValueError("Bezout matrix needs degree >= 1")
    rhs = _antisym_coeffs(p, q)
    # unknown b_ij -> column i*n + j; equation (a, b) -> row a*(n+1) + b
    A = linalg.zeros((n + 1) ** 2, n * n)
    for i in range(n):
        for j in range(n):
            A[(i + 1) * (n + 1) + j, i * n + j] += 1
            A[i * (n + 1) + j + 1, i * n + j] -= 1
    rhs_vec = linalg.zeros((n + 1) ** 2, 1)
    for (a, b), c in rhs.items():
        rhs_vec[a * (n + 1) + b, 0] = c
    sol = linalg.solve_in_span(A, rhs_vec[:, 0])
    B = sol.reshape(n, n)
    if check:
        if not np.array_equal(B, bezout_telescoping(p, q)):
            raise TheoremViolation("coefficient matching and telescoping disagree")
    return B


def bezout_telescoping(p: UniPoly, q: UniPoly) -> np.ndarray:
    """Bezout matrix by expanding x^i y^j - x^j y^i into geometric sums."""
    n = _check_degrees(p, q)
    pc, qc = p.coefficients, q.coefficients
    B = linalg.zeros(n, n)
    for i in range(n + 1):
        for j in range(n + 1):
            c = pc[i] * qc[j]
            if not c or i == j:
                continue
            lo, hi = min(i, j), max(i, j)
            sign = 1 if i > j else -1
            # x^hi y^lo - x^lo y^hi = sum_k x^(lo+k-1) (x - y) y^(hi-k)
            for k in range(1, hi - lo + 1):
                B[lo + k - 1, hi - k] += sign * c
    return B


def exchange_matrix(n: int) -> np.ndarray:
    """The ``n x n`` matrix with ones on the anti-diagonal."""
    J = linalg.zeros(n, n)
    for i in range(n):
        J[i, n - 1 - i] = Fraction(1)
    return J


def _skew(B: np.ndarray) -> np.ndarray:
    Z = linalg.zeros(*B.shape)
    return linalg.block([[Z, -B], [B, Z]])


def kravitsky_sides(p, q, f, g, convention: str = "consistent"):
    """Both sides of the Kravitsky identity.

    ``"consistent"``: ``S(p,q)^T [[0,-B(f,g)],[B(f,g),0]] S(p,q)`` against the
    same expression with (p,q) and (f,g) exchanged.  ``"printed"`` negates the
    block matrix on the right-hand side; that variant does not hold in
    general (it fails already for (p,q) = (f,g)) and is kept only so the
    discrepancy can be demonstrated.
    """
    _check_degrees(p, q, f, g)
    Spq, Sfg = sylvester(p, q), sylvester(f, g)
    lhs = Spq.T @ _skew(bezout(f, g)) @ Spq
    mid = _skew(bezout(p, q))
    if convention == "printed":
        mid = -mid
    elif convention != "consistent":
        raise ValueError(f"unknown convention {convention!r}")
    rhs = Sfg.T @ mid @ Sfg
    return lhs, rhs


def kravitsky_check(p, q, f, g, convention: str = "consistent") -> bool:
    lhs, rhs = kravitsky_sides(p, q, f, g, convention)
    return bool(np.array_equal(lhs, rhs))


def count_common_roots(p: UniPoly, q: UniPoly, method: str = "sylvester") -> int:
    """Common zeros with multiplicity, as a kernel dimension."""
    n = _check_degrees(p, q)
    if method == "sylvester":
        return 2 * n - linalg.rank(sylvester(p, q))
    if method == "bezout":
        return n - linalg.rank(bezout(p, q))
    raise ValueError(f"unknown method {method!r}")


def parse_binary_form(text: str, variables: Sequence[str] = ("s", "t"), degree: int | None = None) -> UniPoly:
    """Parse a binary form in (s, t) and dehomogenize at t = 1.

    The declared degree is the degree of the form, so factors of ``t`` show
    up as vanishing leading coefficients.
    """
    terms = parse_terms(text, variables)
    degrees = {sum(e) for e in terms}
    if len(degrees) > 1:
        raise NotHomogeneous(f"binary form {text!r} mixes degrees {sorted(degrees)}")
    if degree is None:
        degree = degrees.pop() if degrees else 0
    elif degrees and degrees != {degree}:
        raise NotHomogeneous(f"binary form {text!r} is not of degree {degree}")
    p = UniPoly({(a,): c for (a, _), c in terms.items()}, degree)
    p.variables = (variables[0],)
    return p


def line_image_pencil(p0: UniPoly, p1: UniPoly, p2: UniPoly):
    """Pencil ``(M0, M1, M2)`` whose determinant vanishes on the image of the line.

    ``M0 = B(p1, p2)``, ``M1 = B(p2, p0)``, ``M2 = B(p0, p1)`` where the forms
    are given dehomogenized (``t = 1``) with their form degree declared.
    This cyclic assignment is the one for which
    ``sum_k p_k(s) M_k`` annihilates the Vandermonde vector at ``s``.
    """
    _check_degrees(p0, p1, p2)
    if p0.is_zero() and p1.is_zero() and p2.is_zero():
        raise ValueError("all three forms vanish identically")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegreeDropWarning)
        return bezout(p1, p2), bezout(p2, p0), bezout(p0, p1)
