"""Determinantal representations of images of curves under rational maps.

For a map ``r = (p0, p1, p2)`` of degree n on a curve C with pencil D, the
image r(C) is cut out by ``det(x0 B(p1,p2) + x1 B(p2,p0) + x2 B(p0,p1))``
with the Bezout matrices taken along C.  Basepoints of r on C force the
pencil to be compressed to the part of ``V_n`` orthogonal to the
Vandermonde vectors at the basepoints.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .curve import (
    blown_bezout,
    curve_vandermonde,
    principal_subspace,
    restricted_bezout,
)
from .detrep import DetRep, PointWithKernel, det_poly, kernel_at, sample_points, transform
from .errors import (
    BasepointWarning,
    DegeneratePencil,
    DegreeMismatch,
    InvalidBasepoint,
    LineInCurve,
    NotInSpan,
    PointNotOnCurve,
    TheoremViolation,
)
from .poly import HomPoly3, MonomialOrder, coefficient_vector, compose, evaluate

__all__ = [
    "RationalMap",
    "ImagePencil",
    "ImageReport",
    "identity_map",
    "validate_map",
    "reduced_subspace",
    "image_pencil",
    "image_kernel_vector",
    "rational_curve_points",
    "verify_image",
    "vanishing_combination_check",
    "compose_maps",
    "compose_check",
    "tau_matrix",
    "equivalence_preservation_check",
    "proportionality",
]


@dataclass(frozen=True, eq=False)
class RationalMap:
    """Three forms of a common degree and the declared basepoints on the curve.

    Basepoints are given as coordinates; their kernel vectors are attached
    when the map is validated against a pencil.
    """

    p0: HomPoly3
    p1: HomPoly3
    p2: HomPoly3
    basepoints: tuple = ()

    def __post_init__(self):
        forms = self.forms
        if any(not isinstance(f, HomPoly3) for f in forms):
            raise TypeError("map components must be forms in x0, x1, x2")
        if len({f.degree for f in forms}) != 1:
            raise DegreeMismatch(f"map components have degrees {[f.degree for f in forms]}")
        if self.degree < 1:
            raise ValueError("map components must have degree >= 1")
        vecs = np.column_stack([coefficient_vector(f) for f in forms])
        if linalg.rank(vecs) < 2:
            raise ValueError("map components are proportional: the image is a point")
        object.__setattr__(self, "basepoints", tuple(tuple(b) for b in self.basepoints))

    @property
    def forms(self) -> tuple[HomPoly3, HomPoly3, HomPoly3]:
        return (self.p0, self.p1, self.p2)

    @property
    def degree(self) -> int:
        return self.p0.degree

    def __call__(self, point) -> tuple:
        return tuple(evaluate(f, point) for f in self.forms)


def identity_map() -> RationalMap:
    return RationalMap(HomPoly3.linear(1, 0, 0), HomPoly3.linear(0, 1, 0), HomPoly3.linear(0, 0, 1))


def _is_zero(v, tol: float = 1e-10) -> bool:
    return abs(v) <= tol if isinstance(v, (complex, float)) else v == 0


def validate_map(D: DetRep, r: RationalMap) -> list[PointWithKernel]:
    """Check the declared basepoints and return them with kernel vectors.

    Each basepoint must lie on the curve and annihilate all three forms.
    A ``BasepointWarning`` is emitted when the Bezout matrices share more
    kernel than the declared basepoints explain, which signals undeclared
    (or multiple) basepoints.
    """
    out = []
    for b in r.basepoints:
        try:
            pk = kernel_at(D, b)
        except PointNotOnCurve as exc:
            raise InvalidBasepoint(f"basepoint {b} is not on the curve") from exc
        if not all(_is_zero(evaluate(f, pk.point)) for f in r.forms):
            raise InvalidBasepoint(f"basepoint {b} does not annihilate all three forms")
        if pk.multidim:
            raise InvalidBasepoint(f"basepoint {b} is a singular point of the curve")
        out.append(pk)
    if len({pk.point for pk in out}) != len(out):
        raise InvalidBasepoint("basepoints are repeated")
    nm = r.degree * D.m
    stacked = np.vstack(_bezout_slots(D, r))
    common = nm - linalg.rank(stacked)
    if common > len(out):
        warnings.warn(
            f"Bezout matrices share a {common}-dimensional kernel but {len(out)} basepoint(s) "
            "were declared; the map likely has undeclared or multiple basepoints",
            BasepointWarning,
            stacklevel=2,
        )
    return out


def _bezout_slots(D: DetRep, r: RationalMap):
    p0, p1, p2 = r.forms
    return (
        restricted_bezout(D, p1, p2),
        restricted_bezout(D, p2, p0),
        restricted_bezout(D, p0, p1),
    )


def reduced_subspace(D: DetRep, n: int, basepoints: Sequence[PointWithKernel]):
    """Coordinates (in the ``V_n`` basis) of the reduced subspace and of the basepoint vectors.

    Returns ``(K, Yc)``: the columns of ``Q K`` span the vectors of ``V_n``
    orthogonal (standard inner product on ``W_n``) to every basepoint
    Vandermonde vector, and ``Q Yc`` are those Vandermonde vectors.
    """
    V = principal_subspace(D, n)
    Q = V.basis
    if not basepoints:
        nm = Q.shape[1]
        return linalg.identity(nm, D.exact), linalg.zeros(nm, 0, D.exact)
    Y = np.column_stack([curve_vandermonde(D, pk, n) for pk in basepoints])
    Yc = V.coordinates(Y)
    G = linalg.conj_transpose(Y) @ Q
    K = linalg.kernel_basis(G)
    return K, Yc


@dataclass(frozen=True, eq=False)
class ImagePencil:
    """Pencil ``(M0, M1, M2)`` of the image curve and how it was built."""

    M0: np.ndarray
    M1: np.ndarray
    M2: np.ndarray
    source: DetRep
    map: RationalMap
    reduction: np.ndarray = field(repr=False)  # V_n coordinates of the reduced basis
    basepoint_coords: np.ndarray = field(repr=False)
    reduced: bool = True

    @property
    def matrices(self):
        return (self.M0, self.M1, self.M2)

    @property
    def size(self) -> int:
        return self.M0.shape[0]

    def detrep(self) -> DetRep:
        return DetRep(self.M0, self.M1, self.M2)

    def det_poly(self, allow_degenerate: bool = False) -> HomPoly3:
        return det_poly(self.matrices, allow_degenerate=allow_degenerate)

    def at(self, point) -> np.ndarray:
        return sum((M * c for M, c in zip(self.matrices, point)), linalg.zeros(self.size, self.size, linalg.is_exact(self.M0)))


def image_pencil(
    D: DetRep,
    r: RationalMap,
    reduce: bool = True,
    check: bool = True,
    debug: bool = False,
) -> ImagePencil:
    """Image pencil ``(B(p1,p2), B(p2,p0), B(p0,p1))`` compressed to the reduced subspace.

    ``reduce=False`` skips the basepoint reduction (the pencil is then
    degenerate whenever there are basepoints).  ``check`` raises
    :class:`DegeneratePencil` if the determinant vanishes identically.
    ``debug`` spot-checks the vanishing combination at a few curve points.
    """
    basepoints = validate_map(D, r)
    n = r.degree
    slots = _bezout_slots(D, r)
    if reduce:
        K, Yc = reduced_subspace(D, n, basepoints)
    else:
        K, Yc = linalg.identity(n * D.m, D.exact), linalg.zeros(n * D.m, 0, D.exact)
    mats = tuple(K.T @ B @ K for B in slots)
    pencil = ImagePencil(*mats, source=D, map=r, reduction=K, basepoint_coords=Yc, reduced=reduce)
    if check:
        delta = det_poly(mats, allow_degenerate=True)
        if delta.is_zero() or (not D.exact and max(abs(c) for c in delta.coeffs.values()) < 1e-12):
            raise DegeneratePencil(
                f"image pencil of size {pencil.size} has identically zero determinant; "
                f"{len(basepoints)} basepoint(s) declared"
            )
    if debug:
        for pt in rational_curve_points(D, 3, seed=0):
            if any(not _is_zero(v) for v in r(pt)):
                if not vanishing_combination_check(D, r, kernel_at(D, pt)):
                    raise TheoremViolation(f"vanishing combination fails at {pt}")
    return pencil


def image_kernel_vector(pencil: ImagePencil, pk: PointWithKernel) -> np.ndarray:
    """Kernel vector of the image pencil at ``r(x)`` built from ``V_n(x, e)``.

    Splits the ``V_n`` coordinates of the Vandermonde vector along the
    reduced subspace and the basepoint vectors and keeps the first part.
    """
    D = pencil.source
    n = pencil.map.degree
    c = principal_subspace(D, n).coordinates(curve_vandermonde(D, pk, n))
    K, Yc = pencil.reduction, pencil.basepoint_coords
    if Yc.shape[1] == 0:
        return linalg.solve_in_span(K, c)
    coords = linalg.solve_in_span(np.hstack([K, Yc]), c)
    return coords[: K.shape[1]]


def vanishing_combination_check(D: DetRep, r: RationalMap, pk: PointWithKernel, tol: float = 1e-9) -> bool:
    """Does ``sum_k p_k(x) B'_k`` annihilate the Vandermonde vector at ``x``?"""
    n = r.degree
    V = principal_subspace(D, n)
    c = V.coordinates(curve_vandermonde(D, pk, n))
    vals = r(pk.point)
    slots = _bezout_slots(D, r)
    if linalg.is_exact(c):
        combo = sum((B * v for B, v in zip(slots, vals)), linalg.zeros(*slots[0].shape, exact=True))
        return linalg.is_zero(combo @ c)
    slots = [np.array(B.tolist(), dtype=complex) for B in slots]
    combo = sum(B * complex(v) for B, v in zip(slots, vals))
    resid = np.linalg.norm(combo @ c)
    return bool(resid <= tol * max(1.0, np.linalg.norm(combo) * np.linalg.norm(c)))


# -- sampling and verification ------------------------------------------------


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def rational_curve_points(D: DetRep, count: int, seed: int = 0, max_tries: int | None = None) -> list[tuple]:
    """Distinct rational points of the curve, found by intersecting random lines.

    Starts from the coordinate lines and then draws random lines through
    already-known rational points, whose remaining intersections are often
    rational (always, for conics).  May return fewer than ``count`` points.
    """
    rng = random.Random(seed)
    found: dict = {}
    for line in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        try:
            for pt in sample_points(D, line, "exact"):
                found.setdefault(pt, None)
        except LineInCurve:
            pass
    tries = 0
    max_tries = max_tries if max_tries is not None else 20 * count + 20
    while len(found) < count and tries < max_tries:
        tries += 1
        known = list(found)
        a = tuple(Fraction(rng.randint(-9, 9)) for _ in range(3))
        line = _cross(a, rng.choice(known)) if known else a
        if all(v == 0 for v in line):
            continue
        try:
            for pt in sample_points(D, line, "exact"):
                found.setdefault(pt, None)
        except LineInCurve:
            continue
    return list(found)[:count]


def _float_curve_points(D: DetRep, count: int, rng: random.Random, tol: float) -> list[tuple]:
    pts: list = []
    while len(pts) < count:
        line = tuple(rng.randint(-9, 9) for _ in range(3))
        if all(v == 0 for v in line):
            continue
        try:
            pts.extend(sample_points(D, line, "float", tol))
        except LineInCurve:
            continue
    return pts[:count]


@dataclass(frozen=True)
class ImageReport:
    samples: int
    skipped_basepoints: int
    max_residual: float
    tol: float
    backend: str
    failures: tuple = ()

    @property
    def passed(self) -> bool:
        return not self.failures and self.samples > 0

    def as_dict(self) -> dict:
        return {
            "samples": self.samples,
            "skipped_basepoints": self.skipped_basepoints,
            "max_residual": self.max_residual,
            "tol": self.tol,
            "backend": self.backend,
            "passed": self.passed,
            "failures": [list(map(str, f)) for f in self.failures],
        }


def _relative_det(A: np.ndarray) -> float:
    A = np.asarray(A, dtype=complex)
    norms = np.linalg.norm(A, axis=1)
    if np.any(norms == 0):
        return 0.0
    return float(abs(np.linalg.det(A)) / np.prod(norms))


def verify_image(pencil: ImagePencil, samples: int = 20, seed: int = 0, backend: str = "exact", tol: float = 1e-8) -> ImageReport:
    """Evaluate the image pencil's determinant at ``r(x)`` for sampled curve points.

    Exact sampling uses rational curve points and requires exact zeros;
    float sampling uses complex intersections with random lines and a
    residual ``|det A| / prod(row norms of A)`` below ``tol``.
    Basepoints (where ``r`` is undefined) are skipped.
    """
    D, r = pencil.source, pencil.map
    skipped = 0
    failures = []
    worst = 0.0
    if backend == "exact" and D.exact:
        pts = rational_curve_points(D, samples, seed)
        used = 0
        for pt in pts:
            img = r(pt)
            if all(v == 0 for v in img):
                skipped += 1
                continue
            used += 1
            value = linalg.det(pencil.at(img))
            if value != 0:
                failures.append((pt, value))
                worst = max(worst, float(abs(value)))
        return ImageReport(used, skipped, worst, 0.0, "exact", tuple(failures))
    rng = random.Random(seed)
    Df = D.to_float() if D.exact else D
    mats = [np.array(M.tolist(), dtype=complex) for M in pencil.matrices]
    used = 0
    for pt in _float_curve_points(Df, samples, rng, tol):
        img = tuple(complex(evaluate(f, pt)) for f in r.forms)
        scale = max(abs(v) for v in img)
        if scale <= 1e-10 * max(1.0, max(abs(v) for v in pt)):
            skipped += 1
            continue
        used += 1
        img = tuple(v / scale for v in img)
        res = _relative_det(sum(M * v for M, v in zip(mats, img)))
        worst = max(worst, res)
        if res > tol:
            failures.append((pt, res))
    return ImageReport(used, skipped, worst, tol, "float", tuple(failures))


# -- proportionality, composition, equivalence --------------------------------


def proportionality(a: HomPoly3, b: HomPoly3, tol: float = 1e-9):
    """Return ``c`` with ``b = c * a`` or ``None`` if the forms are not proportional.

    Each coefficient vector is normalized by its first nonzero entry in
    monomial order before comparison.
    """
    if a.degree != b.degree:
        return None
    va, vb = coefficient_vector(a), coefficient_vector(b)
    ia = next((k for k, v in enumerate(va) if not _is_zero(v, 0.0)), None)
    ib = next((k for k, v in enumerate(vb) if not _is_zero(v, 0.0)), None)
    if ia is None or ib is None or ia != ib:
        return None
    na, nb = va / va[ia], vb / vb[ib]
    exact = all(not isinstance(v, (complex, float)) for v in list(va) + list(vb))
    if exact:
        return vb[ib] / va[ia] if all(x == y for x, y in zip(na, nb)) else None
    na, nb = np.array(na, dtype=complex), np.array(nb, dtype=complex)
    if np.max(np.abs(na - nb)) <= tol * max(np.max(np.abs(na)), 1.0):
        return complex(vb[ib]) / complex(va[ia])
    return None


def compose_maps(s: RationalMap, r: RationalMap, basepoints: Sequence = ()) -> RationalMap:
    """``s o r``: the forms ``q_i(p0, p1, p2)`` of degree ``deg s * deg r``."""
    return RationalMap(*(compose(q, r.forms) for q in s.forms), basepoints=tuple(basepoints))


def _selection(n: int, nk: int, i: tuple, m: int) -> np.ndarray:
    """``M_i``: ``W_nk -> W_n`` with ``(M_i w)_l = w_{i + l}`` for ``|l| = n - 1``."""
    rows = MonomialOrder(n - 1)
    cols = MonomialOrder(nk - 1)
    S = linalg.zeros(len(rows), len(cols))
    for a, l in enumerate(rows.monomials):
        S[a, cols.index(tuple(x + y for x, y in zip(i, l)))] = Fraction(1)
    return linalg.kron(S, linalg.identity(m))


def tau_matrix(D: DetRep, pencil: ImagePencil, k: int) -> np.ndarray:
    """``tau``: coordinates on ``V_nk`` -> blown space of the image curve at level k.

    Block ``j`` (``|j| = k - 1``) sends ``w`` to the reduced image coordinates
    of ``S(p^j) w`` where ``S(a) = sum_i a_i M_i`` runs over the monomial
    coefficients of ``p^j = p0^j0 p1^j1 p2^j2``.  On Vandermonde vectors,
    ``V_nk(x, e)`` goes to the Vandermonde vector of the image at ``r(x)``.
    """
    r = pencil.map
    n = r.degree
    nk = n * k
    if nk > 4:
        raise ValueError("the tau construction is limited to n * k <= 4")
    Vn = principal_subspace(D, n)
    Qnk = principal_subspace(D, nk).basis
    K, Yc = pencil.reduction, pencil.basepoint_coords
    split = np.hstack([K, Yc]) if Yc.shape[1] else K
    blocks = []
    one = HomPoly3({(0, 0, 0): 1}, 0)
    for j in MonomialOrder(k - 1).monomials:
        pj = one
        for f, e in zip(r.forms, j):
            for _ in range(e):
                pj = pj * f
        S = linalg.zeros(Vn.basis.shape[0], Qnk.shape[0])
        for i, a in pj.coeffs.items():
            S = S + a * _selection(n, nk, i, D.m)
        try:
            c = Vn.coordinates(S @ Qnk)
        except NotInSpan as exc:
            raise TheoremViolation(f"S(p^{j}) leaves V_{n}: {exc}") from exc
        blocks.append(linalg.solve_in_span(split, c)[: K.shape[1]])
    return np.vstack(blocks)


def compose_check(D: DetRep, r: RationalMap, s: RationalMap, composite_basepoints: Sequence | None = None, tau: bool = False) -> dict:
    """Compare the pencil of ``s o r`` on C with the pencil of ``s`` on the image of r.

    Reports whether the two determinants are proportional (and the scalar),
    and optionally checks ``Q^T B_C(q_i(p), q_j(p)) Q = (tau Q)^T B_E(q_i, q_j) (tau Q)``
    where ``E`` is the image pencil of r and ``Q`` the basis of ``V_nk``.
    """
    if composite_basepoints is None:
        composite_basepoints = r.basepoints if s.degree == 1 else ()
    sr = compose_maps(s, r, composite_basepoints)
    direct = image_pencil(D, sr)
    first = image_pencil(D, r)
    E = first.detrep()
    second = image_pencil(E, s)
    da, db = direct.det_poly(), second.det_poly()
    scalar = proportionality(da, db)
    report = {
        "direct_size": direct.size,
        "two_step_size": second.size,
        "det_direct": da.to_text() if D.exact else str(da),
        "det_two_step": db.to_text() if D.exact else str(db),
        "proportional": scalar is not None,
        "scalar": scalar,
    }
    if tau:
        if first.basepoint_coords.shape[1] or s.basepoints:
            raise ValueError("the tau check is implemented for maps without basepoints")
        k = s.degree
        T = tau_matrix(D, first, k)
        Q = principal_subspace(D, r.degree * k).basis
        ok = True
        qs = s.forms
        for a, b in ((1, 2), (2, 0), (0, 1)):
            lhs = Q.T @ blown_bezout(D, sr.forms[a], sr.forms[b]) @ Q
            rhs = T.T @ blown_bezout(E, qs[a], qs[b]) @ T
            ok = ok and bool(np.array_equal(lhs, rhs)) if D.exact else ok and bool(np.allclose(lhs, rhs))
        report["tau_checked"] = True
        report["tau_ok"] = ok
    return report


def equivalence_preservation_check(D: DetRep, P, r: RationalMap) -> dict:
    """Image pencils of ``D`` and ``P D P*`` have proportional determinants."""
    D2 = transform(D, P)
    a = image_pencil(D, r).det_poly()
    b = image_pencil(D2, r).det_poly()
    scalar = proportionality(a, b)
    return {"proportional": scalar is not None, "scalar": scalar, "det": a.to_text() if D.exact else str(a), "det_transformed": b.to_text() if D.exact else str(b)}
