from __future__ import annotations

import warnings
from fractions import Fraction

import numpy as np
import pytest
import sympy

from conftest import random_conic_point
from curvelim import linalg
from curvelim.detrep import (
    DetRep,
    check_irreducible,
    det_poly,
    kernel_at,
    linear_change,
    normalize_point,
    pencil_at,
    sample_points,
    transform,
)
from curvelim.errors import DegeneratePencil, LineInCurve, PointNotOnCurve, ReducibleWarning, SingularMatrix
from curvelim.fixtures import CUBIC_EQUATION, CUBIC_RATIONAL_POINTS, conic_point
from curvelim.poly import evaluate, parse_poly
from curvelim.poly import linear_change as poly_linear_change


def sympy_det_poly(D: DetRep):
    x0, x1, x2 = sympy.symbols("x0 x1 x2")
    M = sympy.Matrix(D.m, D.m, lambda i, j: sum(sympy.Rational(Dk[i, j]) * xk for Dk, xk in zip(D.matrices, (x0, x1, x2))))
    return sympy.Poly(M.det(), x0, x1, x2)


def as_sympy_poly(p):
    x = sympy.symbols("x0 x1 x2")
    return sympy.Poly(sum(sympy.Rational(c) * x[0] ** a * x[1] ** b * x[2] ** cc for (a, b, cc), c in p.coeffs.items()), *x)


def test_linear_pencil_of_size_one():
    D = DetRep.from_rows([[1]], [[1]], [[0]])
    assert det_poly(D) == parse_poly("x0 + x1")


def test_conic_det_poly(C):
    assert det_poly(C) == parse_poly("x0^2 - x1^2 - x2^2")
    assert C.hermitian and C.m == 2


def test_cubic_det_poly_and_irreducibility(K):
    assert det_poly(K) == parse_poly(CUBIC_EQUATION)
    assert as_sympy_poly(det_poly(K)) == sympy_det_poly(K)
    assert check_irreducible(K)
    for pt in CUBIC_RATIONAL_POINTS:
        assert evaluate(det_poly(K), pt) == 0


def test_det_poly_matches_sympy_on_random_pencils(rng):
    for m in (2, 3, 4):
        mats = [[[rng.randint(-3, 3) for _ in range(m)] for _ in range(m)] for _ in range(3)]
        D = DetRep.from_rows(*mats)
        assert as_sympy_poly(det_poly(D)) == sympy_det_poly(D)


def test_degenerate_pencil_rejected():
    with pytest.raises(DegeneratePencil):
        DetRep.from_rows([[1, 0], [0, 0]], [[0, 1], [0, 0]], [[2, 0], [0, 0]])


def test_reducible_pencil_warns():
    D = DetRep.from_rows([[1, 0], [0, 1]], [[1, 0], [0, 0]], [[0, 0], [0, 1]])
    with pytest.warns(ReducibleWarning):
        assert not check_irreducible(D)


@pytest.mark.parametrize(
    "point,expected",
    [((1, 1, 0), [0, 1]), ((5, 3, 4), [1, -2])],
)
def test_kernel_vectors_on_conic(C, point, expected):
    pk = kernel_at(C, point)
    assert pk.e.tolist() == expected
    assert linalg.is_zero(pencil_at(C, pk.point) @ pk.e)


def test_kernel_off_curve(C):
    with pytest.raises(PointNotOnCurve):
        kernel_at(C, (1, 0, 0))


def test_kernel_is_projectively_well_defined(C, rng):
    for _ in range(20):
        pt = random_conic_point(rng)
        lam = Fraction(rng.choice([-7, -2, 3, 5]), rng.choice([1, 2, 9]))
        a = kernel_at(C, pt)
        b = kernel_at(C, tuple(lam * v for v in pt))
        assert np.array_equal(a.e, b.e) and a.point == b.point


def test_multidimensional_kernel_at_singular_point():
    # det = x0 * x1 * x2: singular at (1, 0, 0)
    D = DetRep.from_rows([[1, 0, 0], [0, 0, 0], [0, 0, 0]], [[0, 0, 0], [0, 1, 0], [0, 0, 0]], [[0, 0, 0], [0, 0, 0], [0, 0, 1]])
    pk = kernel_at(D, (1, 0, 0))
    assert pk.multidim and pk.basis.shape == (3, 2)


def test_transform_identity_and_scalar(C):
    assert transform(C, linalg.identity(2)) == C
    D2 = transform(C, linalg.exact_matrix([[2, 0], [0, 2]]))
    assert det_poly(D2) == det_poly(C) * 16
    with pytest.raises(SingularMatrix):
        transform(C, linalg.exact_matrix([[1, 2], [2, 4]]))


def test_transform_scales_by_det_times_conjugate(C, rng):
    for _ in range(10):
        P = linalg.exact_matrix([[rng.randint(-4, 4) for _ in range(2)] for _ in range(2)])
        d = linalg.det(P)
        if d == 0:
            continue
        assert det_poly(transform(C, P)) == det_poly(C) * (d * d.conjugate())


def test_transform_gaussian_matrix(C):
    from curvelim.scalars import GaussianRational

    P = linalg.exact_matrix([[GaussianRational(1, 1), 0], [2, GaussianRational(0, -1)]])
    d = linalg.det(P)
    D2 = transform(C, P)
    assert D2.hermitian
    assert det_poly(D2) == det_poly(C) * (d * d.conjugate())


def test_pencil_linear_change_matches_form_change(C, K):
    A = linalg.exact_matrix([[1, 2, 0], [0, 1, -1], [3, 0, 1]])
    for D in (C, K):
        assert det_poly(linear_change(D, A)) == poly_linear_change(det_poly(D), A)


@pytest.mark.parametrize(
    "line,expected",
    [((0, 1, 0), {(1, 0, 1), (1, 0, -1)}), ((0, 0, 1), {(1, 1, 0), (1, -1, 0)}), ((1, 0, 0), set())],
)
def test_sample_points_exact(C, line, expected):
    pts = sample_points(C, line)
    assert {tuple(int(v) for v in p) for p in pts} == expected


def test_sample_points_float_complex(C):
    pts = sample_points(C, (1, 0, 0), "float")
    assert len(pts) == 2
    got = sorted((round(p[2].imag), p) for p in pts)
    for sign, p in got:
        assert abs(p[0]) < 1e-12 and abs(p[1] - 1) < 1e-12 and abs(p[2] - 1j * sign) < 1e-12


def test_random_lines_give_points_on_conic(C, rng):
    delta = det_poly(C)
    for _ in range(20):
        line = [rng.randint(-5, 5) for _ in range(3)]
        if line == [0, 0, 0]:
            continue
        for pt in sample_points(C, line):
            assert evaluate(delta, pt) == 0
        for pt in sample_points(C, line, "float"):
            assert abs(evaluate(delta.__class__({e: complex(c) for e, c in delta.coeffs.items()}, 2), pt)) < 1e-9


def test_line_in_reducible_curve():
    D = DetRep.from_rows([[0, 0], [0, 1]], [[1, 0], [0, 0]], [[0, 0], [0, 1]])  # x1 * (x0 + x2)
    with pytest.raises(LineInCurve):
        sample_points(D, (0, 1, 0))


def test_cubic_float_samples(K):
    pts = sample_points(K, (1, 2, 3), "float")
    assert len(pts) == 3
    Kf = K.to_float()
    for pt in pts:
        assert kernel_at(Kf, pt).e is not None


def test_normalize_point():
    assert normalize_point((0, 2, 4)) == (0, 1, 2)
    with pytest.raises(ValueError):
        normalize_point((0, 0, 0))
