from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from curvelim import linalg
from curvelim.errors import BackendMismatch, NotInSpan, NotSquare, SingularMatrix
from curvelim.scalars import GaussianRational, format_scalar, parse_scalar, to_exact

small_ints = st.integers(min_value=-6, max_value=6)


def int_matrix(rows, cols):
    return st.lists(st.lists(small_ints, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def test_exact_matrix_converts_entries():
    A = linalg.exact_matrix([[1, "1/2"], ["-3/4", 0]])
    assert A.dtype == object
    assert A[0, 1] == Fraction(1, 2) and isinstance(A[1, 1], Fraction)


def test_exact_matrix_rejects_floats():
    with pytest.raises(TypeError):
        linalg.exact_matrix([[0.5]])


def test_rank_and_kernel_small_example():
    A = linalg.exact_matrix([[1, 2, 3], [2, 4, 6]])
    assert linalg.rank(A) == 1
    N = linalg.kernel_basis(A)
    assert N.shape == (3, 2)
    assert linalg.is_zero(A @ N)
    # canonical: identity rows at the free columns
    assert N[1].tolist() == [1, 0] and N[2].tolist() == [0, 1]


def test_kernel_is_canonical_for_the_subspace():
    A = linalg.exact_matrix([[1, 1, 0, 2], [0, 1, 1, 1]])
    B = linalg.exact_matrix([[3, 4, 1, 7], [1, 0, -1, 1]])  # same row space
    assert np.array_equal(linalg.kernel_basis(A), linalg.kernel_basis(B))


@settings(max_examples=60, deadline=None)
@given(int_matrix(4, 4))
def test_bareiss_det_matches_sympy(rows):
    A = linalg.exact_matrix(rows)
    assert linalg.det(A) == sympy.Matrix(rows).det()


@settings(max_examples=60, deadline=None)
@given(int_matrix(3, 5))
def test_rank_nullity(rows):
    A = linalg.exact_matrix(rows)
    N = linalg.kernel_basis(A)
    assert linalg.rank(A) + N.shape[1] == 5
    assert linalg.is_zero(A @ N)
    assert linalg.rank(A) == sympy.Matrix(rows).rank()


@settings(max_examples=40, deadline=None)
@given(int_matrix(3, 3))
def test_inverse_roundtrip(rows):
    A = linalg.exact_matrix(rows)
    if linalg.det(A) == 0:
        with pytest.raises(SingularMatrix):
            linalg.inverse(A)
    else:
        assert np.array_equal(A @ linalg.inverse(A), linalg.identity(3))


def test_float_backend_rank_and_kernel():
    A = np.array([[1, 2, 3], [2, 4, 6.0]], dtype=complex)
    assert linalg.rank(A) == 1
    N = linalg.kernel_basis(A)
    assert np.allclose(A @ N, 0)
    # canonical form: two rows of N form the identity
    unit_rows = [r for r in range(3) if np.allclose(np.abs(N[r]), [1, 0]) or np.allclose(np.abs(N[r]), [0, 1])]
    assert len(unit_rows) >= 2
    B = np.array([[3, 6, 9], [-1, -2, -3.0]], dtype=complex)
    assert np.allclose(linalg.kernel_basis(B), N)


def test_kron_block_layout():
    A = linalg.exact_matrix([[1, 2]])
    B = linalg.exact_matrix([[0, 1], [1, 0]])
    K = linalg.kron(A, B)
    assert K.tolist() == [[0, 1, 0, 2], [1, 0, 2, 0]]


def test_backend_mixing_is_rejected():
    with pytest.raises(BackendMismatch):
        linalg.kron(linalg.identity(2), np.eye(2, dtype=complex))


def test_solve_in_span():
    basis = linalg.exact_matrix([[1, 0], [1, 1], [0, 1]])
    c = linalg.solve_in_span(basis, linalg.exact_vector([2, 5, 3]))
    assert c.tolist() == [2, 3]
    with pytest.raises(NotInSpan):
        linalg.solve_in_span(basis, linalg.exact_vector([1, 0, 1]))


def test_det_requires_square():
    with pytest.raises(NotSquare):
        linalg.det(linalg.zeros(2, 3))


def test_gaussian_rationals():
    z = GaussianRational(1, 2)
    assert z * z.conjugate() == 5
    assert (z / z) == 1
    assert parse_scalar(format_scalar(GaussianRational(Fraction(-1, 3), Fraction(2, 5)))) == GaussianRational(
        Fraction(-1, 3), Fraction(2, 5)
    )
    A = linalg.exact_matrix([[z, 1], [0, z]])
    assert linalg.conj_transpose(A)[0, 0] == z.conjugate()
    assert linalg.det(A) == z * z


@pytest.mark.parametrize("text,value", [("3", Fraction(3)), ("-7/4", Fraction(-7, 4)), ("1/2+3*i", GaussianRational("1/2", 3))])
def test_scalar_serialization_roundtrip(text, value):
    assert to_exact(text) == value
    assert format_scalar(value) == text
