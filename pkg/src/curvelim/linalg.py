"""Dense linear algebra over two backends.

Exact matrices are numpy ``object`` arrays whose entries are ``Fraction``
(or ``GaussianRational``); floating matrices are ``complex128`` (or
``float64``) arrays.  The backend is read off the dtype, and operations that
would mix the two raise :class:`~curvelim.errors.BackendMismatch`.

All functions are pure: inputs are never modified.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import scipy.linalg

from .errors import BackendMismatch, NotInSpan, NotSquare, SingularMatrix
from .scalars import GaussianRational, to_exact

__all__ = [
    "exact_matrix",
    "float_matrix",
    "is_exact",
    "backend",
    "zeros",
    "identity",
    "rref",
    "rank",
    "kernel_basis",
    "det",
    "inverse",
    "kron",
    "solve_in_span",
    "conj_transpose",
    "block",
    "is_zero",
    "default_tol",
]


def exact_matrix(rows) -> np.ndarray:
    """Build an exact matrix from nested sequences of ints, Fractions or strings."""
    a = np.array(rows, dtype=object)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else np.empty((0, 0), dtype=object)
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        out[idx] = to_exact(v)
    return out


def exact_vector(values) -> np.ndarray:
    out = np.empty(len(values), dtype=object)
    for i, v in enumerate(values):
        out[i] = to_exact(v)
    return out


def float_matrix(rows) -> np.ndarray:
    a = np.array(rows, dtype=object)
    out = np.empty(a.shape, dtype=complex)
    for idx, v in np.ndenumerate(a):
        out[idx] = complex(v)
    if not np.all(np.isfinite(out)):
        raise ValueError("non-finite entry in floating matrix")
    return out


def is_exact(A) -> bool:
    return np.asarray(A).dtype == object


def backend(A) -> str:
    return "exact" if is_exact(A) else "float"


def _same_backend(*arrays) -> bool:
    flags = {is_exact(a) for a in arrays}
    if len(flags) > 1:
        raise BackendMismatch("cannot mix exact and floating matrices")
    return flags.pop()


def zeros(rows: int, cols: int, exact: bool = True) -> np.ndarray:
    if exact:
        out = np.empty((rows, cols), dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros((rows, cols), dtype=complex)


def identity(n: int, exact: bool = True) -> np.ndarray:
    out = zeros(n, n, exact)
    for i in range(n):
        out[i, i] = Fraction(1) if exact else 1.0
    return out


def _field_copy(A) -> np.ndarray:
    # ints in object arrays would turn into floats under "/"
    A = np.asarray(A)
    out = np.empty(A.shape, dtype=object)
    for idx, v in np.ndenumerate(A):
        out[idx] = v if isinstance(v, (Fraction, GaussianRational)) else to_exact(v)
    return out


def default_tol(s: np.ndarray, shape) -> float:
    if s.size == 0:
        return 0.0
    return max(shape) * np.finfo(float).eps * float(s[0])


def rref(A):
    """Exact reduced row echelon form. Returns ``(R, pivot_columns)``."""
    R = _field_copy(A)
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = [i for i in range(r, rows) if R[i, c] != 0]
        if not nz:
            continue
        i = nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = R[r] / R[r, c]
        for k in range(rows):
            if k != r and R[k, c] != 0:
                R[k] = R[k] - R[k, c] * R[r]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A, tol: float | None = None) -> int:
    """Rank of ``A``.

    Exact backend: Gauss-Jordan over the rationals.  Float backend: number
    of singular values above ``tol`` (default ``max(shape)*eps*s_max``).
    """
    A = np.asarray(A)
    if A.size == 0:
        return 0
    if is_exact(A):
        return len(rref(A)[1])
    s = np.linalg.svd(A, compute_uv=False)
    if tol is None:
        tol = default_tol(s, A.shape)
    return int(np.sum(s > tol))


def kernel_basis(A, tol: float | None = None) -> np.ndarray:
    """Right null space of ``A`` as the columns of a matrix.

    The exact basis is canonical: one column per free variable of the RREF,
    with a 1 in that position, 0 in the other free positions.  Equivalently,
    it is the reduced column echelon form of the kernel read from the last
    nonzero row, so it depends only on the subspace.

    The float basis is normalized the same way, with the identity rows
    chosen by column-pivoted QR of the orthonormal SVD basis.
    """
    A = np.asarray(A)
    cols = A.shape[1]
    if is_exact(A):
        if A.shape[0] == 0:
            return identity(cols)
        R, pivots = rref(A)
        free = [c for c in range(cols) if c not in set(pivots)]
        N = zeros(cols, len(free))
        for k, f in enumerate(free):
            N[f, k] = Fraction(1)
            for r, p in enumerate(pivots):
                N[p, k] = -R[r, f]
        return N
    if A.shape[0] == 0:
        return np.eye(cols, dtype=complex)
    _, s, vh = np.linalg.svd(A)
    if tol is None:
        tol = default_tol(s, A.shape)
    r = int(np.sum(s > tol))
    N = vh[r:].conj().T
    return _canonical_float_basis(N)


def _canonical_float_basis(N: np.ndarray) -> np.ndarray:
    k = N.shape[1]
    if k == 0:
        return N.astype(complex)
    _, _, piv = scipy.linalg.qr(N.conj().T, pivoting=True)
    rows = np.sort(piv[:k])
    return N @ np.linalg.inv(N[rows, :])


def det(A):
    """Determinant: fraction-free Bareiss (exact) or pivoted LU (float)."""
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotSquare(f"determinant of a {A.shape} matrix")
    n = A.shape[0]
    if not is_exact(A):
        return complex(np.linalg.det(A)) if n else 1.0
    if n == 0:
        return Fraction(1)
    M = _field_copy(A)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if M[k, k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i, k] != 0), None)
            if swap is None:
                return Fraction(0)
            M[[k, swap]] = M[[swap, k]]
            sign = -sign
        pivot = M[k, k]
        M[k + 1:, k + 1:] = (
            M[k + 1:, k + 1:] * pivot - np.outer(M[k + 1:, k], M[k, k + 1:])
        ) / prev
        prev = pivot
    return M[n - 1, n - 1] if sign > 0 else -M[n - 1, n - 1]


def inverse(A) -> np.ndarray:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotSquare(f"inverse of a {A.shape} matrix")
    n = A.shape[0]
    if not is_exact(A):
        if rank(A) < n:
            raise SingularMatrix("matrix is singular")
        return np.linalg.inv(A)
    R, pivots = rref(np.hstack([_field_copy(A), identity(n)]))
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return R[:, n:]


def kron(A, B) -> np.ndarray:
    """Kronecker product; block ``(i, j)`` of the result is ``A[i, j] * B``."""
    A = np.asarray(A)
    B = np.asarray(B)
    exact = _same_backend(A, B)
    out = zeros(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1], exact)
    br, bc = B.shape
    for (i, j), a in np.ndenumerate(A):
        if a != 0:
            out[i * br:(i + 1) * br, j * bc:(j + 1) * bc] = a * B
    return out


def solve_in_span(basis, v, tol: float | None = None) -> np.ndarray:
    """Coordinates ``c`` with ``basis @ c == v``; raises NotInSpan otherwise.

    ``v`` may be a vector or a matrix of column vectors.
    """
    basis = np.asarray(basis)
    v = np.asarray(v)
    single = v.ndim == 1
    V = v.reshape(-1, 1) if single else v
    if V.shape[0] != basis.shape[0]:
        raise ValueError(f"vector length {V.shape[0]} != ambient dimension {basis.shape[0]}")
    exact = _same_backend(basis, V)
    k = basis.shape[1]
    if exact:
        R, pivots = rref(np.hstack([basis, V]))
        if sum(1 for p in pivots if p < k) < k:
            raise ValueError("basis does not have full column rank")
        if len(pivots) > k:
            raise NotInSpan("vector is not in the span of the basis")
        C = R[:k, k:]
    else:
        C, *_ = np.linalg.lstsq(basis, V, rcond=None)
        resid = np.linalg.norm(basis @ C - V)
        scale = max(np.linalg.norm(V), 1.0)
        if tol is None:
            tol = 1e-9
        if resid > tol * scale:
            raise NotInSpan(f"residual {resid:.3e} exceeds tolerance")
    return C[:, 0] if single else C


def conj_transpose(A) -> np.ndarray:
    A = np.asarray(A)
    if not is_exact(A):
        return A.conj().T
    out = np.empty((A.shape[1], A.shape[0]), dtype=object)
    for (i, j), v in np.ndenumerate(A):
        out[j, i] = v.conjugate()
    return out


def block(rows) -> np.ndarray:
    """``np.block`` that keeps object dtype when all blocks are exact."""
    flat = [b for row in rows for b in row]
    exact = _same_backend(*flat)
    out = np.block([[np.asarray(b) for b in row] for row in rows])
    return out.astype(object) if exact else out.astype(complex)


def is_zero(A, tol: float | None = None) -> bool:
    A = np.asarray(A)
    if is_exact(A):
        return all(v == 0 for v in A.flat)
    if tol is None:
        tol = 1e-9
    return bool(np.all(np.abs(A) <= tol))
