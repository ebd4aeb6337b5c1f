"""Elimination along a plane curve given by a determinantal representation.

Vectors of the blown space ``W_n`` have one length-m block per monomial of
degree n-1 (blocks in :class:`~curvelim.poly.MonomialOrder`), flattened as
``position(i) * m + fiber``.  The principal subspace ``V_n`` is cut out by

    D0 w[j + e0] + D1 w[j + e1] + D2 w[j + e2] = 0    for all |j| = n - 2,

and contains the curve Vandermonde vectors ``(x^i e)_{|i| = n-1}``.
Generalized shift, Sylvester and Bezout matrices are written in the
coordinates of the canonical basis of ``V_n``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .detrep import DetRep, PointWithKernel, det_poly, kernel_at, sample_points, warn_if_not_hermitian
from .errors import (
    AllDenominatorsZero,
    CurveElimWarning,
    DegreeMismatch,
    DisagreementDetected,
    NotInSpan,
    TheoremViolation,
    Unsupported,
)
from .poly import HomPoly3, MonomialOrder, evaluate

__all__ = [
    "PrincipalSubspace",
    "BezoutTriple",
    "blown_dim",
    "constraint_matrix",
    "principal_subspace",
    "curve_vandermonde",
    "trivariate_shift_matrix",
    "blown_shift",
    "generalized_shift",
    "generalized_sylvester",
    "count_common_zeros_sylvester",
    "hom_bezout_decomposition",
    "decomposition_holds",
    "blown_bezout",
    "restricted_bezout",
    "count_common_zeros_bezout",
    "curve_count",
    "pairing",
    "pairing_ratios",
    "bezout_vandermonde_identity_check",
    "generalized_kravitsky_sides",
    "generalized_kravitsky_check",
    "vandermonde_generation_check",
    "ambient_projector",
]


def blown_dim(n: int, m: int) -> int:
    return m * n * (n + 1) // 2


def _unit(k: int) -> tuple[int, int, int]:
    return tuple(1 if i == k else 0 for i in range(3))


def _plus(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _minus(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _power(point, exponent):
    out = 1
    for v, k in zip(point, exponent):
        if k:
            out = out * v**k
    return out


# -- principal subspace -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PrincipalSubspace:
    """Canonical basis (columns of ``basis``) of ``V_n`` inside ``W_n``."""

    detrep: DetRep
    n: int
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def coordinates(self, w, tol: float | None = None) -> np.ndarray:
        """Coordinates of ``w`` in the basis; raises NotInSpan if ``w`` is outside ``V_n``."""
        return linalg.solve_in_span(self.basis, w, tol)

    def contains(self, w, tol: float | None = None) -> bool:
        try:
            self.coordinates(w, tol)
        except NotInSpan:
            return False
        return True


def constraint_matrix(D: DetRep, n: int) -> np.ndarray:
    """Rows of the linear conditions defining ``V_n`` (empty for n = 1)."""
    m = D.m
    rows_idx = MonomialOrder(n - 2)
    cols_idx = MonomialOrder(n - 1)
    C = linalg.zeros(len(rows_idx) * m if n >= 2 else 0, len(cols_idx) * m, D.exact)
    for r, j in enumerate(rows_idx.monomials if n >= 2 else ()):
        for k, Dk in enumerate(D.matrices):
            c = cols_idx.index(_plus(j, _unit(k)))
            C[r * m:(r + 1) * m, c * m:(c + 1) * m] = Dk
    return C


_SUBSPACE_CACHE: dict = {}


def principal_subspace(D: DetRep, n: int, tol: float | None = None) -> PrincipalSubspace:
    """Principal subspace ``V_n``; its dimension must equal ``n * m``.

    Results are cached per pencil and level (idempotently).
    """
    if n < 1:
        raise ValueError("level n must be at least 1")
    key = (D.key(), D.exact, n, tol)
    cached = _SUBSPACE_CACHE.get(key)
    if cached is not None:
        return cached
    warn_if_not_hermitian(D)
    if n == 1:
        basis = linalg.identity(D.m, D.exact)
    else:
        basis = linalg.kernel_basis(constraint_matrix(D, n), tol)
    if basis.shape[1] != n * D.m:
        raise TheoremViolation(
            f"dim V_{n} = {basis.shape[1]}, expected n*m = {n * D.m} (m = {D.m})"
        )
    basis.flags.writeable = False
    V = PrincipalSubspace(D, n, basis)
    _SUBSPACE_CACHE[key] = V
    return V


# -- Vandermonde vectors on the curve ----------------------------------------


def curve_vandermonde(D: DetRep, pk: PointWithKernel, n: int, order: int = 0) -> np.ndarray:
    """Vandermonde vector of level ``n`` at a curve point.

    Order 0 returns the blocks ``x^i e`` for ``|i| = n - 1`` (exact when the
    point is).  Order 1 returns the derivative of ``x(t)^i e(t)`` along a
    local parametrization of the curve through the point (float backend).
    """
    if order == 0:
        x, e = pk.point, pk.e
        blocks = [_power(x, i) * e for i in MonomialOrder(n - 1).monomials]
        return np.concatenate(blocks)
    if order == 1:
        return _first_order_vandermonde(D, pk, n)
    raise Unsupported("only Vandermonde vectors of order 0 and 1 are supported")


def _first_order_vandermonde(D: DetRep, pk: PointWithKernel, n: int) -> np.ndarray:
    if pk.multidim:
        raise Unsupported("order-1 vectors need a one-dimensional kernel (smooth point)")
    x = np.array([complex(v) for v in pk.point])
    chart = int(np.argmax(np.abs(x)))
    x = x / x[chart]
    Df = D.to_float() if D.exact else D
    delta = det_poly(Df)
    grad = np.array([
        complex(evaluate(_partial(delta, k), tuple(x))) for k in range(3)
    ])
    coeff_scale = max(abs(complex(c)) for c in delta.coeffs.values())
    if np.max(np.abs(grad)) <= 1e-10 * coeff_scale:
        raise Unsupported(f"the curve is singular at {pk.point}")
    # tangent direction inside the chart x[chart] = 1
    constraint = np.zeros((2, 3), dtype=complex)
    constraint[0] = grad
    constraint[1, chart] = 1.0
    v = linalg.kernel_basis(constraint)[:, 0]
    v = v / np.linalg.norm(v)
    mats = Df.matrices
    A = sum(xk * M for xk, M in zip(x, mats))
    Av = sum(vk * M for vk, M in zip(v, mats))
    e = np.array([complex(c) for c in pk.e])
    # e(t) in ker A(x(t)): A e' = -A(v) e, normalized by <e, e'> = 0
    lhs = np.vstack([A, e.conj()[None, :]])
    rhs = np.concatenate([-Av @ e, [0.0]])
    de, *_ = np.linalg.lstsq(lhs, rhs, rcond=None)
    if np.linalg.norm(lhs @ de - rhs) > 1e-8 * max(1.0, np.linalg.norm(rhs)):
        raise Unsupported(f"kernel vector is not differentiable at {pk.point}")
    blocks = []
    for i in MonomialOrder(n - 1).monomials:
        dxi = 0.0
        for k in range(3):
            if i[k]:
                dxi += i[k] * _power(x, _minus(i, _unit(k))) * v[k]
        blocks.append(dxi * e + _power(x, i) * de)
    return np.concatenate(blocks)


def _partial(p: HomPoly3, k: int) -> HomPoly3:
    terms = {}
    for e, c in p.coeffs.items():
        if e[k]:
            terms[_minus(e, _unit(k))] = c * e[k]
    return HomPoly3(terms, max(p.degree - 1, 0))


# -- shifts and Sylvester -----------------------------------------------------


def trivariate_shift_matrix(p: HomPoly3) -> np.ndarray:
    """Row ``i`` (``|i| = n - 1``) holds the coefficients of ``x^i p`` in degree ``2n - 1``."""
    n = p.degree
    if n < 1:
        raise ValueError("shift matrix needs degree >= 1")
    rows = MonomialOrder(n - 1)
    cols = MonomialOrder(2 * n - 1)
    T = linalg.zeros(len(rows), len(cols))
    for r, i in enumerate(rows.monomials):
        for e, c in p.coeffs.items():
            T[r, cols.index(_plus(i, e))] = c
    return T


def _match_backend(A: np.ndarray, exact: bool) -> np.ndarray:
    if exact or not linalg.is_exact(A):
        return A
    return np.array(A.tolist(), dtype=complex)


def blown_shift(D: DetRep, p: HomPoly3) -> np.ndarray:
    """``T(p) (x) I_m``: maps ``W_{2n}`` to ``W_n``."""
    T = _match_backend(trivariate_shift_matrix(p), D.exact)
    return linalg.kron(T, linalg.identity(D.m, D.exact))


def generalized_shift(D: DetRep, p: HomPoly3, check: bool = True) -> np.ndarray:
    """``nm x 2nm`` matrix of ``T(p) (x) I`` restricted to ``V_{2n}``, in basis coordinates.

    With ``check`` the rank is required to be ``nm`` (or 0 when p vanishes on
    the whole curve, which only warns).
    """
    n = p.degree
    Vn = principal_subspace(D, n)
    V2n = principal_subspace(D, 2 * n)
    image = blown_shift(D, p) @ V2n.basis
    try:
        Tp = Vn.coordinates(image)
    except NotInSpan as exc:
        raise TheoremViolation(f"shifted V_{2 * n} leaves V_{n}: {exc}") from exc
    if check:
        r = linalg.rank(Tp)
        if r == 0:
            warnings.warn(f"{p} vanishes on the whole curve", CurveElimWarning, stacklevel=2)
        elif r != n * D.m:
            raise TheoremViolation(f"rank of the generalized shift of {p} is {r}, expected {n * D.m}")
    return Tp


def _check_pair(p: HomPoly3, q: HomPoly3) -> int:
    if not isinstance(p, HomPoly3) or not isinstance(q, HomPoly3):
        raise TypeError("curve elimination works with forms in x0, x1, x2")
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree} differ")
    if p.degree < 1:
        raise ValueError("forms must have degree >= 1")
    return p.degree


def generalized_sylvester(D: DetRep, p: HomPoly3, q: HomPoly3, check: bool = True) -> np.ndarray:
    _check_pair(p, q)
    return np.vstack([generalized_shift(D, p, check), generalized_shift(D, q, check)])


def count_common_zeros_sylvester(D: DetRep, p: HomPoly3, q: HomPoly3, tol: float | None = None) -> int:
    """Common zeros of p and q on the curve, with multiplicity: ``2nm - rank S'``."""
    n = _check_pair(p, q)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CurveElimWarning)
        S = generalized_sylvester(D, p, q)
    return 2 * n * D.m - linalg.rank(S, tol)


# -- Bezout -------------------------------------------------------------------

# x_u y_v - x_v y_u expressed through the three named kernels
_KERNEL_OF_PAIR = {
    (1, 0): ("10", 1), (0, 1): ("10", -1),
    (2, 0): ("20", 1), (0, 2): ("20", -1),
    (1, 2): ("12", 1), (2, 1): ("12", -1),
}


@dataclass(frozen=True, eq=False)
class BezoutTriple:
    """Symmetric matrices with

    ``p(x)q(y) - q(x)p(y) = sum_ij x^i [b10_ij (x1 y0 - x0 y1) + b20_ij (x2 y0 - x0 y2)
    + b12_ij (x1 y2 - x2 y1)] y^j`` over ``|i| = |j| = n - 1``.
    """

    n: int
    b10: np.ndarray
    b20: np.ndarray
    b12: np.ndarray

    def as_dict(self) -> dict:
        return {"10": self.b10, "20": self.b20, "12": self.b12}


def _antisym_terms(p: HomPoly3, q: HomPoly3) -> dict:
    out: dict = {}
    for a, pa in p.coeffs.items():
        for b, qb in q.coeffs.items():
            c = pa * qb
            out[(a, b)] = out.get((a, b), 0) + c
            out[(b, a)] = out.get((b, a), 0) - c
    return {k: v for k, v in out.items() if v != 0}


def hom_bezout_decomposition(p: HomPoly3, q: HomPoly3) -> BezoutTriple:
    """Deterministic symmetric Bezout triple of two forms of degree n.

    Each antisymmetric pair ``x^a y^b - x^b y^a`` is telescoped one exchange
    at a time: at every step the smallest coordinate where the x-exponent
    still exceeds its target is traded against the smallest coordinate
    where it falls short, which peels off one factor ``x_u y_v - x_v y_u``.
    The result is then symmetrized, which keeps the identity because each
    kernel factor is antisymmetric in ``x <-> y``.
    """
    n = _check_pair(p, q)
    order = MonomialOrder(n - 1)
    N = len(order)
    beta = {k: linalg.zeros(N, N) for k in ("10", "20", "12")}
    full = MonomialOrder(n)
    for (a, b), c in _antisym_terms(p, q).items():
        if full.index(a) >= full.index(b):
            continue  # each unordered pair once, with coefficient c(a, b)
        cx, cy = a, b
        while cx != b:
            u = next(k for k in range(3) if cx[k] > b[k])
            v = next(k for k in range(3) if cx[k] < b[k])
            name, sign = _KERNEL_OF_PAIR[(u, v)]
            i = _minus(cx, _unit(u))
            j = _minus(cy, _unit(v))
            beta[name][order.index(i), order.index(j)] += sign * c
            cx = _plus(i, _unit(v))
            cy = _plus(j, _unit(u))
    sym = {k: (B + B.T) / 2 for k, B in beta.items()}
    return BezoutTriple(n, sym["10"], sym["20"], sym["12"])


def _expand_triple(triple: BezoutTriple) -> dict:
    """Expand the triple into {(x-exponent, y-exponent): coefficient}."""
    order = MonomialOrder(triple.n - 1)
    # kernel entries: ((x-part, y-part), sign) pairs; x1 y0 is x-exponent e1, y-exponent e0
    kernels = {
        "10": [((_unit(1), _unit(0)), 1), ((_unit(0), _unit(1)), -1)],
        "20": [((_unit(2), _unit(0)), 1), ((_unit(0), _unit(2)), -1)],
        "12": [((_unit(1), _unit(2)), 1), ((_unit(2), _unit(1)), -1)],
    }
    out: dict = {}
    for name, B in triple.as_dict().items():
        for (r, s), c in np.ndenumerate(B):
            if c == 0:
                continue
            i, j = order.monomials[r], order.monomials[s]
            for (kx, ky), sign in kernels[name]:
                key = (_plus(i, kx), _plus(j, ky))
                out[key] = out.get(key, 0) + sign * c
    return {k: v for k, v in out.items() if v != 0}


def decomposition_holds(p: HomPoly3, q: HomPoly3, triple: BezoutTriple | None = None) -> bool:
    """Symbolic check of the decomposition identity for ``triple``."""
    if triple is None:
        triple = hom_bezout_decomposition(p, q)
    return _expand_triple(triple) == _antisym_terms(p, q)


def blown_bezout(D: DetRep, p: HomPoly3, q: HomPoly3) -> np.ndarray:
    """Bezout matrix on ``W_n``: ``b12 (x) D0 + b20 (x) D1 - b10 (x) D2``.

    The pairing of kernels with pencil matrices follows the pairing
    identity: ``e^T D0 h``, ``e^T D1 h`` and ``e^T D2 h`` are proportional to
    ``x1 y2 - x2 y1``, ``x2 y0 - x0 y2`` and ``x0 y1 - x1 y0`` respectively.
    """
    t = hom_bezout_decomposition(p, q)
    b = [_match_backend(M, D.exact) for M in (t.b12, t.b20, t.b10)]
    D0, D1, D2 = D.matrices
    return linalg.kron(b[0], D0) + linalg.kron(b[1], D1) - linalg.kron(b[2], D2)


def restricted_bezout(D: DetRep, p: HomPoly3, q: HomPoly3, basis: np.ndarray | None = None) -> np.ndarray:
    """``Q^T B Q`` for the canonical basis ``Q`` of ``V_n`` (or a supplied basis)."""
    n = _check_pair(p, q)
    Q = principal_subspace(D, n).basis if basis is None else basis
    return Q.T @ blown_bezout(D, p, q) @ Q


def count_common_zeros_bezout(D: DetRep, p: HomPoly3, q: HomPoly3, tol: float | None = None) -> int:
    """Common zeros of p and q on the curve, with multiplicity: ``nm - rank B'``."""
    n = _check_pair(p, q)
    return n * D.m - linalg.rank(restricted_bezout(D, p, q), tol)


def curve_count(D: DetRep, p: HomPoly3, q: HomPoly3, tol: float | None = None) -> dict:
    n = _check_pair(p, q)
    s = count_common_zeros_sylvester(D, p, q, tol)
    b = count_common_zeros_bezout(D, p, q, tol)
    return {"n": n, "m": D.m, "sylvester_count": s, "bezout_count": b, "agree": s == b}


def ambient_projector(basis: np.ndarray) -> np.ndarray:
    """Orthogonal projector of ``W_n`` onto the column span of ``basis``."""
    Qh = linalg.conj_transpose(basis)
    return basis @ linalg.inverse(Qh @ basis) @ Qh


# -- pairing and identities ---------------------------------------------------


def _minors(x, y):
    return (
        x[1] * y[2] - x[2] * y[1],
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    )


def pairing_ratios(D: DetRep, pk1: PointWithKernel, pk2: PointWithKernel, labels: str = "derived"):
    """The three quotients ``e^T Dk h / minor_k`` (``None`` when the minor vanishes).

    ``labels="derived"`` pairs D0, D1, D2 with ``x1y2 - x2y1``, ``x2y0 - x0y2``,
    ``x0y1 - x1y0``.  ``labels="printed"`` uses ``x1y0 - x0y1`` for D1 and
    ``x2y0 - x0y2`` for D2, which does not give a common value.
    """
    x, y = pk1.point, pk2.point
    d = _minors(x, y)
    if labels == "printed":
        d = (d[0], -d[2], d[1])
    elif labels != "derived":
        raise ValueError(f"unknown labels {labels!r}")
    e, h = pk1.e, pk2.e
    nums = [e @ Dk @ h for Dk in _pencil_like(D, e)]
    out = []
    for num, den in zip(nums, d):
        out.append(None if _is_zero_scalar(den) else num / den)
    return out, nums, d


def _pencil_like(D: DetRep, e):
    if D.exact and not linalg.is_exact(e):
        return D.to_float().matrices
    return D.matrices


def _is_zero_scalar(v, tol: float = 1e-12) -> bool:
    if isinstance(v, (complex, float)):
        return abs(v) <= tol
    return v == 0


def pairing(D: DetRep, pk1: PointWithKernel, pk2: PointWithKernel, tol: float = 1e-9):
    """Common value ``[e, h]_{x, y}`` of the three pairing quotients.

    Every quotient with a nonzero minor is computed and their agreement is
    checked (exactly, or to relative ``tol`` for floats).
    """
    ratios, nums, dens = pairing_ratios(D, pk1, pk2)
    values = [r for r in ratios if r is not None]
    if not values:
        raise AllDenominatorsZero("all coordinate minors vanish: the points coincide")
    exact = all(not isinstance(v, (complex, float)) for v in values)
    ref = values[0]
    for v in values[1:]:
        if exact:
            if v != ref:
                raise DisagreementDetected(f"pairing quotients differ: {ratios}")
        elif abs(v - ref) > tol * max(abs(ref), abs(v), 1e-300):
            raise DisagreementDetected(f"pairing quotients differ: {ratios}")
    # a vanishing minor must come with a vanishing numerator
    for num, den in zip(nums, dens):
        if _is_zero_scalar(den):
            small = num == 0 if exact else abs(num) <= tol * max(abs(ref), 1.0)
            if not small:
                raise DisagreementDetected(f"nonzero numerator {num} over a vanishing minor")
    return ref


def bezout_vandermonde_sides(D: DetRep, p: HomPoly3, q: HomPoly3, pk1: PointWithKernel, pk2: PointWithKernel):
    n = _check_pair(p, q)
    V1 = curve_vandermonde(D, pk1, n)
    V2 = curve_vandermonde(D, pk2, n)
    B = blown_bezout(D, p, q)
    if not linalg.is_exact(V1):
        B = _match_backend(B, False)
    lhs = V1 @ B @ V2
    x, y = pk1.point, pk2.point
    rhs = (evaluate(p, x) * evaluate(q, y) - evaluate(q, x) * evaluate(p, y)) * pairing(D, pk1, pk2)
    return lhs, rhs


def bezout_vandermonde_identity_check(D, p, q, pk1, pk2, tol: float = 1e-9) -> bool:
    lhs, rhs = bezout_vandermonde_sides(D, p, q, pk1, pk2)
    if isinstance(lhs, (complex, float)) or isinstance(rhs, (complex, float)):
        return abs(lhs - rhs) <= tol * max(abs(lhs), abs(rhs), 1.0)
    return lhs == rhs


def _skew(B: np.ndarray) -> np.ndarray:
    Z = linalg.zeros(B.shape[0], B.shape[1], linalg.is_exact(B))
    return linalg.block([[Z, -B], [B, Z]])


def generalized_kravitsky_sides(D: DetRep, p, q, f, g):
    """``S'(p,q)^T [[0,-B'(f,g)],[B'(f,g),0]] S'(p,q)`` and the (p,q) <-> (f,g) swap."""
    n = _check_pair(p, q)
    if _check_pair(f, g) != n:
        raise DegreeMismatch("all four forms must share a degree")
    Spq = generalized_sylvester(D, p, q, check=False)
    Sfg = generalized_sylvester(D, f, g, check=False)
    lhs = Spq.T @ _skew(restricted_bezout(D, f, g)) @ Spq
    rhs = Sfg.T @ _skew(restricted_bezout(D, p, q)) @ Sfg
    return lhs, rhs


def generalized_kravitsky_check(D: DetRep, p, q, f, g, tol: float = 1e-9) -> bool:
    lhs, rhs = generalized_kravitsky_sides(D, p, q, f, g)
    if D.exact:
        return bool(np.array_equal(lhs, rhs))
    return bool(np.allclose(lhs, rhs, rtol=tol, atol=tol * max(np.max(np.abs(lhs)), 1.0)))


def vandermonde_generation_check(D: DetRep, lines: Sequence, backend: str = "exact", tol: float = 1e-8) -> bool:
    """Do the Vandermonde vectors at the zeros of ``prod L_i`` span ``V_n``?

    ``n = len(lines)``; the ``nm`` intersection points must be distinct and
    all available on the chosen backend (rational for exact).
    """
    n = len(lines)
    if n < 1:
        raise ValueError("need at least one line")
    points = []
    for line in lines:
        pts = sample_points(D, line, backend, tol)
        if len(pts) != D.m:
            raise ValueError(f"line {tuple(line)} meets the curve in {len(pts)} available points, need {D.m}")
        points.extend(pts)
    if backend == "exact":
        distinct = len(set(points)) == len(points)
    else:
        arr = np.array(points)
        gaps = [np.linalg.norm(arr[a] - arr[b]) for a in range(len(arr)) for b in range(a)]
        distinct = not gaps or min(gaps) > 1e-6
    if not distinct:
        raise ValueError("lines are not generic: intersection points repeat")
    Dk = D if backend == "exact" else (D.to_float() if D.exact else D)
    vectors = [curve_vandermonde(Dk, kernel_at(Dk, pt, tol), n) for pt in points]
    M = np.column_stack(vectors)
    V = principal_subspace(Dk, n)
    if linalg.rank(M, None if backend == "exact" else tol * max(np.max(np.abs(M)), 1.0)) != n * D.m:
        return False
    return all(V.contains(v) for v in vectors)
