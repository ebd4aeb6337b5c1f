from __future__ import annotations

import warnings
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_unipoly
from curvelim import linalg
from curvelim.classical import (
    bezout,
    bezout_telescoping,
    count_common_roots,
    exchange_matrix,
    kravitsky_check,
    kravitsky_sides,
    line_image_pencil,
    parse_binary_form,
    resultant,
    shift_matrix,
    sylvester,
    vandermonde,
)
from curvelim.detrep import det_poly
from curvelim.errors import DegreeDropWarning, DegreeMismatch, NotHomogeneous
from curvelim.poly import UniPoly, parse_poly

X = sympy.Symbol("x")
Y = sympy.Symbol("y")


def as_sympy(p: UniPoly, var=X):
    return sum(sympy.Rational(c.numerator, c.denominator) * var**i for i, c in enumerate(p.coefficients))


def test_resultant_of_two_linear_polys():
    assert resultant(UniPoly([-1, 1]), UniPoly([-2, 1])) == 1


def test_vandermonde_orders():
    assert vandermonde(2, 4).tolist() == [1, 2, 4, 8]
    assert vandermonde(2, 4, 1).tolist() == [0, 1, 4, 12]


def test_shift_matrix_annihilates_vandermonde_at_roots():
    p = UniPoly([6, -5, 1])  # roots 2, 3
    T = shift_matrix(p)
    assert T.shape == (2, 4)
    for r in (2, 3):
        assert linalg.is_zero(T @ vandermonde(r, 4))


def test_bezout_of_one_and_x():
    assert bezout(UniPoly([1], 1), UniPoly([0, 1])).tolist() == [[-1]]


def test_bezout_identity_against_symbolic_expansion(rng):
    for n in range(1, 6):
        p, q = random_unipoly(rng, n), random_unipoly(rng, n)
        B = bezout(p, q)
        lhs = sympy.expand(as_sympy(p, X) * as_sympy(q, Y) - as_sympy(q, X) * as_sympy(p, Y))
        rhs = sympy.expand(sum(sympy.Rational(B[i, j]) * X**i * (X - Y) * Y**j for i in range(n) for j in range(n)))
        assert lhs == rhs
        assert np.array_equal(B, B.T)
        assert np.array_equal(B, bezout_telescoping(p, q))


def test_resultant_matches_sympy_up_to_column_order(rng):
    # our Sylvester rows run from the constant coefficient up; reversing the
    # 2n columns multiplies the determinant by (-1)^n
    for n in range(1, 6):
        p, q = random_unipoly(rng, n), random_unipoly(rng, n)
        assert resultant(p, q) == (-1) ** n * sympy.resultant(as_sympy(p), as_sympy(q), X)


def test_abs_det_sylvester_equals_abs_det_bezout(rng):
    for n in range(1, 6):
        p, q = random_unipoly(rng, n), random_unipoly(rng, n)
        assert abs(linalg.det(sylvester(p, q))) == abs(linalg.det(bezout(p, q)))


def test_kravitsky_consistent_sign_holds(rng):
    for n in range(1, 5):
        p, q, f, g = (random_unipoly(rng, n) for _ in range(4))
        assert kravitsky_check(p, q, f, g)


def test_kravitsky_with_negated_right_side_fails_even_for_equal_pairs():
    p, q = UniPoly([1, 2, 1]), UniPoly([0, -1, 3])
    assert kravitsky_check(p, q, p, q)
    assert not kravitsky_check(p, q, p, q, convention="printed")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_kravitsky_exchange_matrix_form(n):
    one = UniPoly([1], n)
    xn = UniPoly({(n,): 1}, n)
    with pytest.warns(DegreeDropWarning):
        assert np.array_equal(sylvester(one, xn), linalg.identity(2 * n))
    assert np.array_equal(bezout(one, xn), -exchange_matrix(n))
    # S^T [[0, -J], [J, 0]] S = [[0, B], [-B, 0]]
    rng_p = UniPoly(list(range(1, n + 2)), n)
    rng_q = UniPoly([(-1) ** k * (k + 2) for k in range(n + 1)], n)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegreeDropWarning)
        lhs, rhs = kravitsky_sides(rng_p, rng_q, one, xn)
    assert np.array_equal(lhs, rhs)
    S = sylvester(rng_p, rng_q)
    B = bezout(rng_p, rng_q)
    J = exchange_matrix(n)
    Z = linalg.zeros(n, n)
    assert np.array_equal(S.T @ linalg.block([[Z, -J], [J, Z]]) @ S, linalg.block([[Z, B], [-B, Z]]))


@pytest.mark.parametrize("k", [0, 1, 2])
def test_constructed_common_roots_are_counted(k):
    shared = [UniPoly([-3, 1]), UniPoly([2, 1])][:k]
    p_rest = [UniPoly([-1, 1]), UniPoly([5, 1]), UniPoly([-7, 1])]
    q_rest = [UniPoly([4, 1]), UniPoly([1, 2]), UniPoly([-11, 1])]
    p, q = UniPoly([1], 0), UniPoly([1], 0)
    from curvelim.poly import mul

    for f in shared:
        p, q = mul(p, f), mul(q, f)
    for f, g in zip(p_rest[: 3 - k], q_rest[: 3 - k]):
        p, q = mul(p, f), mul(q, g)
    assert p.degree == q.degree == 3
    assert count_common_roots(p, q, "sylvester") == k
    assert count_common_roots(p, q, "bezout") == k


def test_degree_mismatch_and_degree_drop():
    with pytest.raises(DegreeMismatch):
        sylvester(UniPoly([1, 1]), UniPoly([1, 1, 1]))
    with pytest.warns(DegreeDropWarning):
        sylvester(UniPoly([1, 1, 0], 2), UniPoly([1, 0, 1]))


def test_parse_binary_form():
    p = parse_binary_form("s^2*t + t^3")
    assert p.degree == 3 and p.coefficients == [1, 0, 1, 0]
    with pytest.raises(NotHomogeneous):
        parse_binary_form("s^2 + t")


def test_line_image_pythagorean_parametrization():
    forms = [parse_binary_form(t) for t in ("s^2 + t^2", "2*s*t", "s^2 - t^2")]
    M = line_image_pencil(*forms)
    delta = det_poly(M)
    conic = parse_poly("x0^2 - x1^2 - x2^2")
    ratio = delta.coeff((2, 0, 0)) / conic.coeff((2, 0, 0))
    assert ratio != 0 and delta == conic * ratio


def test_line_image_vanishes_on_parametrized_points():
    forms = [parse_binary_form(t) for t in ("s^3 + t^3", "s*t^2", "s^2*t - t^3")]
    M = line_image_pencil(*forms)
    for s in range(-3, 4):
        for t in (1, 2):
            point = [sum(c * Fraction(s) ** i * Fraction(t) ** (3 - i) for i, c in enumerate(f.coefficients)) for f in forms]
            A = sum(Mk * xk for Mk, xk in zip(M, point))
            assert linalg.det(A) == 0
            # the kernel contains the Vandermonde vector of the parameter
            assert linalg.is_zero(A @ vandermonde(Fraction(s, t), 3))


def test_line_image_of_a_double_cover_of_a_line():
    forms = [parse_binary_form(t, degree=2) for t in ("s^2", "t^2", "s^2")]
    # p0 = p2 and s -> -s gives the same point: the line x0 = x2, covered twice
    delta = det_poly(line_image_pencil(*forms))
    assert delta == parse_poly("x0^2 - 2*x0*x2 + x2^2") * delta.coeff((2, 0, 0))


coeff = st.integers(min_value=-4, max_value=4)


@settings(max_examples=40, deadline=None)
@given(st.lists(coeff, min_size=4, max_size=4), st.lists(coeff, min_size=4, max_size=4))
def test_bezout_is_antisymmetric_in_arguments(a, b):
    p, q = UniPoly(a, 3), UniPoly(b, 3)
    assert np.array_equal(bezout(p, q), -bezout(q, p))
    assert linalg.is_zero(bezout(p, p))
