"""Determinantal representations ``det(x0*D0 + x1*D1 + x2*D2)`` of plane curves."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .errors import (
    DegeneratePencil,
    LineInCurve,
    NonHermitianWarning,
    PointNotOnCurve,
    ReducibleWarning,
    SingularMatrix,
)
from .poly import HomPoly3, compose, evaluate
from .scalars import GaussianRational, to_exact

__all__ = [
    "DetRep",
    "PointWithKernel",
    "poly_matrix_det",
    "det_poly",
    "pencil_at",
    "normalize_point",
    "kernel_at",
    "transform",
    "linear_change",
    "sample_points",
    "check_irreducible",
    "is_hermitian",
]


@dataclass(frozen=True, eq=False)
class DetRep:
    """Three ``m x m`` matrices of one backend.

    ``hermitian`` records whether every ``Di`` equals its conjugate
    transpose; it is computed, not trusted from input.
    """

    D0: np.ndarray
    D1: np.ndarray
    D2: np.ndarray
    hermitian: bool = field(init=False)

    def __post_init__(self):
        mats = []
        for name in ("D0", "D1", "D2"):
            A = np.asarray(getattr(self, name))
            if np.issubdtype(A.dtype, np.inexact):
                A = A.astype(complex)
            else:
                A = linalg.exact_matrix(A.tolist())
            if A.ndim != 2 or A.shape[0] != A.shape[1]:
                raise ValueError(f"{name} must be square, got shape {A.shape}")
            A.flags.writeable = False
            object.__setattr__(self, name, A)
            mats.append(A)
        if len({A.shape for A in mats}) != 1:
            raise ValueError("D0, D1, D2 must have equal size")
        linalg._same_backend(*mats)
        object.__setattr__(self, "hermitian", all(_is_herm(A) for A in mats))
        if self.m == 0:
            raise ValueError("pencil matrices must be at least 1 x 1")
        if not _nonzero_somewhere(mats):
            det_poly(mats)  # raises DegeneratePencil if the form is identically zero

    @classmethod
    def from_rows(cls, D0, D1, D2, exact: bool = True) -> "DetRep":
        conv = linalg.exact_matrix if exact else linalg.float_matrix
        return cls(conv(D0), conv(D1), conv(D2))

    @property
    def m(self) -> int:
        return self.D0.shape[0]

    @property
    def matrices(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.D0, self.D1, self.D2)

    @property
    def exact(self) -> bool:
        return linalg.is_exact(self.D0)

    def key(self):
        """Hashable identity of the entries (used for caching)."""
        return tuple(tuple(A.flat) for A in self.matrices) if self.exact else tuple(
            A.tobytes() for A in self.matrices
        )

    def __eq__(self, other):
        if not isinstance(other, DetRep):
            return NotImplemented
        return all(np.array_equal(a, b) for a, b in zip(self.matrices, other.matrices))

    def __hash__(self):
        return hash(self.key())

    def to_float(self) -> "DetRep":
        return DetRep(*(np.array(A.tolist(), dtype=complex) for A in self.matrices))


# cheap probe before the symbolic determinant, which decides when every probe vanishes
_PROBE_POINTS = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 2, 3), (3, -1, 2), (2, 5, -7), (-4, 3, 11))


def _nonzero_somewhere(mats) -> bool:
    for pt in _PROBE_POINTS:
        A = sum(M * c for M, c in zip(mats, pt))
        value = linalg.det(A)
        if abs(complex(value)) > 1e-12 * max(1.0, float(np.max(np.abs(np.asarray(A, dtype=complex)))) ** len(A)):
            return True
    return False


def _is_herm(A) -> bool:
    H = linalg.conj_transpose(A)
    if linalg.is_exact(A):
        return bool(np.array_equal(A, H))
    return bool(np.allclose(A, H))


def is_hermitian(D: DetRep) -> bool:
    return D.hermitian


@dataclass(frozen=True, eq=False)
class PointWithKernel:
    """A curve point with a nonzero vector ``e`` in the pencil's kernel there.

    When the kernel has dimension above one (singular points), ``basis``
    holds all of it and ``multidim`` is set; ``e`` is its first column.
    """

    point: tuple
    e: np.ndarray
    basis: np.ndarray | None = None

    @property
    def multidim(self) -> bool:
        return self.basis is not None and self.basis.shape[1] > 1


def pencil_at(D: DetRep, point) -> np.ndarray:
    x0, x1, x2 = point
    return D.D0 * x0 + D.D1 * x1 + D.D2 * x2


def _pencil_entries(mats) -> list[list[HomPoly3]]:
    M0, M1, M2 = mats
    n = M0.shape[0]
    return [[HomPoly3.linear(M0[i, j], M1[i, j], M2[i, j]) for j in range(n)] for i in range(n)]


def poly_matrix_det(entries: Sequence[Sequence[HomPoly3]]) -> HomPoly3:
    """Determinant of a square matrix of forms by Laplace expansion.

    Expands along rows top-down, memoizing minors by their column set, so the
    cost is ``O(n 2^n)`` products rather than ``n!``.
    """
    n = len(entries)
    if n == 0:
        return HomPoly3({(0, 0, 0): 1}, 0)
    memo: dict[int, HomPoly3] = {}

    def minor(row: int, cols_mask: int) -> HomPoly3:
        if row == n:
            return HomPoly3({(0, 0, 0): 1}, 0)
        if cols_mask in memo:
            return memo[cols_mask]
        total = None
        sign = 1
        for c in range(n):
            if not cols_mask & (1 << c):
                continue
            a = entries[row][c]
            if not a.is_zero():
                sub = minor(row + 1, cols_mask & ~(1 << c))
                term = a * sub * sign if sign > 0 else -(a * sub)
                total = term if total is None else total + term
            sign = -sign
        if total is None:
            deg = sum(entries[r][0].degree for r in range(row, n))
            total = HomPoly3({}, deg)
        memo[cols_mask] = total
        return total

    return minor(0, (1 << n) - 1)


def det_poly(D: DetRep | tuple, allow_degenerate: bool = False) -> HomPoly3:
    """``det(x0*D0 + x1*D1 + x2*D2)`` as a form of degree m."""
    mats = D.matrices if isinstance(D, DetRep) else tuple(D)
    delta = poly_matrix_det(_pencil_entries(mats))
    if not allow_degenerate and _poly_is_zero(delta):
        raise DegeneratePencil("the pencil determinant vanishes identically")
    return delta


def _poly_is_zero(p: HomPoly3, tol: float = 1e-12) -> bool:
    vals = list(p.coeffs.values())
    if not vals:
        return True
    if any(isinstance(v, complex) for v in vals):
        return max(abs(v) for v in vals) <= tol
    return False


def _fmt(point) -> str:
    return "(" + ", ".join(str(v) for v in point) + ")"


def normalize_point(point, tol: float = 1e-12) -> tuple:
    """Scale homogeneous coordinates so the first nonzero one equals 1."""
    pt = tuple(point)
    if all(not isinstance(v, (complex, float)) for v in pt):
        pt = tuple(v if isinstance(v, (Fraction, GaussianRational)) else to_exact(v) for v in pt)
        lead = next((v for v in pt if v != 0), None)
        if lead is None:
            raise ValueError("the zero vector is not a projective point")
        return tuple(v / lead for v in pt)
    arr = np.array(pt, dtype=complex)
    big = np.max(np.abs(arr))
    if big == 0:
        raise ValueError("the zero vector is not a projective point")
    lead_idx = int(np.argmax(np.abs(arr) > tol * big))
    return tuple(complex(v) for v in arr / arr[lead_idx])


def _normalize_vector(e: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    if linalg.is_exact(e):
        lead = next(v for v in e if v != 0)
        return e / lead
    big = np.max(np.abs(e))
    idx = int(np.argmax(np.abs(e) > tol * big))
    return e / e[idx]


def kernel_at(D: DetRep, point, tol: float = 1e-8) -> PointWithKernel:
    """Kernel vector of the pencil at a curve point.

    ``e`` is normalized so that its first nonzero entry is 1, which makes it
    independent of the homogeneous representative of ``point``.  For float
    points ``tol`` bounds the smallest singular value relative to the
    largest.
    """
    exact_point = all(not isinstance(v, (complex, float)) for v in point)
    if D.exact and exact_point:
        pt = normalize_point(point)
        A = pencil_at(D, pt)
        if linalg.det(A) != 0:
            raise PointNotOnCurve(f"det of the pencil at {_fmt(pt)} is nonzero")
        N = linalg.kernel_basis(A)
    else:
        pt = normalize_point(tuple(complex(v) for v in point))
        A = np.asarray(pencil_at(D.to_float() if D.exact else D, pt), dtype=complex)
        s = np.linalg.svd(A, compute_uv=False)
        if s[-1] > tol * max(s[0], 1.0):
            raise PointNotOnCurve(f"smallest singular value {s[-1]:.3e} at {_fmt(pt)}")
        N = linalg.kernel_basis(A, tol=tol * max(s[0], 1.0))
    cols = [_normalize_vector(N[:, k]) for k in range(N.shape[1])]
    e = cols[0]
    basis = np.column_stack(cols) if len(cols) > 1 else None
    return PointWithKernel(pt, e, basis)


def transform(D: DetRep, P) -> DetRep:
    """Hermitian equivalence ``Di -> P Di P*``."""
    P = np.asarray(P)
    if linalg.is_exact(P) != D.exact:
        P = linalg.exact_matrix(P.tolist()) if D.exact else P.astype(complex)
    if linalg.rank(P) < P.shape[0]:
        raise SingularMatrix("P must be invertible")
    Ps = linalg.conj_transpose(P)
    return DetRep(*(P @ A @ Ps for A in D.matrices))


def linear_change(D: DetRep, A) -> DetRep:
    """Pencil whose determinant is ``det_poly(D)(A x)``: ``D'_j = sum_k A[k, j] D_k``."""
    A = np.asarray(A)
    if D.exact and not linalg.is_exact(A):
        A = linalg.exact_matrix(A.tolist())
    if linalg.rank(A) < 3:
        raise SingularMatrix("coordinate change must be invertible")
    mats = D.matrices
    new = [sum((mats[k] * A[k, j] for k in range(3)), linalg.zeros(D.m, D.m, D.exact)) for j in range(3)]
    return DetRep(*new)


def _line_basis(line) -> np.ndarray:
    L = linalg.exact_matrix([list(line)])
    if all(v == 0 for v in L.flat):
        raise ValueError("the zero linear form does not define a line")
    return linalg.kernel_basis(L)


def sample_points(D: DetRep, line, backend: str = "exact", tol: float = 1e-8) -> list[tuple]:
    """Intersections of the curve with the line ``a*x0 + b*x1 + c*x2 = 0``.

    The exact backend returns the distinct rational intersection points;
    the float backend returns all m complex points (with repetition).
    Points are normalized with first nonzero coordinate 1.
    """
    line = tuple(to_exact(v) if not isinstance(v, (Fraction,)) else v for v in line)
    PQ = _line_basis(line)
    P, Q = PQ[:, 0], PQ[:, 1]
    forms = [HomPoly3.linear(P[k], Q[k], 0) for k in range(3)]
    if backend == "exact" and D.exact:
        delta = det_poly(D)
        f = compose(delta, forms)
        m = delta.degree
        coeffs = [f.coeff((i, m - i, 0)) for i in range(m + 1)]  # s^i t^(m-i)
        if all(c == 0 for c in coeffs):
            raise LineInCurve(f"line {_fmt(line)} lies in the curve")
        pts = []
        for root in _rational_roots(coeffs):
            pts.append(normalize_point(tuple(root * P[k] + Q[k] for k in range(3))))
        if coeffs[m] == 0:
            # root at t = 0
            pts.append(normalize_point(tuple(P)))
        for pt in pts:
            if evaluate(delta, pt) != 0:
                raise AssertionError(f"sampled point {_fmt(pt)} is off the curve")
        return list(dict.fromkeys(pts))
    if backend != "float" and backend != "exact":
        raise ValueError(f"unknown backend {backend!r}")
    Df = D.to_float() if D.exact else D
    delta = det_poly(Df) if not D.exact else det_poly(D)
    f = compose(delta, forms)
    m = delta.degree
    coeffs = np.array([complex(f.coeff((i, m - i, 0))) for i in range(m + 1)])
    scale = np.max(np.abs(coeffs))
    if scale == 0:
        raise LineInCurve(f"line {_fmt(line)} lies in the curve")
    Pf = np.array([complex(v) for v in P])
    Qf = np.array([complex(v) for v in Q])
    nz = np.nonzero(np.abs(coeffs) > 1e-14 * scale)[0]
    top = int(nz[-1])
    roots = np.roots(coeffs[: top + 1][::-1]) if top > 0 else np.array([])
    pts = [normalize_point(tuple(r * Pf + Qf)) for r in roots]
    pts += [normalize_point(tuple(Pf))] * (m - top)
    return pts


def _rational_roots(coeffs) -> list[Fraction]:
    """Rational roots of ``sum coeffs[i] * s^i`` (each listed once)."""
    import sympy

    s = sympy.Symbol("s")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * s**i for i, c in enumerate(coeffs) if c != 0)
    if expr == 0:
        return []
    poly = sympy.Poly(expr, s, domain="QQ")
    if poly.degree() < 1:
        return []
    roots = poly.ground_roots()
    return sorted(Fraction(int(r.p), int(r.q)) for r in roots)


def check_irreducible(D: DetRep, warn: bool = True) -> bool:
    """Heuristic irreducibility test of the determinant over the rationals.

    Uses a full factorization over Q, so linear and quadratic factors are
    both detected; factorizations that need irrational coefficients are not.
    """
    import sympy

    if not D.exact:
        return True
    delta = det_poly(D)
    x = sympy.symbols("x0 x1 x2")
    expr = sum(
        sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * x[0] ** a * x[1] ** b * x[2] ** cc
        for (a, b, cc), c in delta.coeffs.items()
    )
    _, factors = sympy.factor_list(expr)
    ok = len(factors) == 1 and factors[0][1] == 1
    if not ok and warn:
        warnings.warn(f"determinant {delta} factors over Q", ReducibleWarning, stacklevel=2)
    return ok


def warn_if_not_hermitian(D: DetRep) -> None:
    if not D.hermitian:
        warnings.warn("pencil matrices are not hermitian", NonHermitianWarning, stacklevel=3)
