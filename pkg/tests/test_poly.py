from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvelim.errors import DegreeMismatch, NotHomogeneous, PolySyntaxError, SingularMatrix
from curvelim.poly import (
    AffinePoly2,
    HomPoly3,
    MonomialOrder,
    UniPoly,
    coefficient_vector,
    compose,
    dehomogenize,
    evaluate,
    homogenize,
    linear_change,
    monomials,
    parse_poly,
)


def test_monomial_order_degree_two():
    assert monomials(2) == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))
    assert MonomialOrder(2).index((0, 1, 1)) == 4


@pytest.mark.parametrize("n", range(6))
def test_monomial_count(n):
    assert len(MonomialOrder(n)) == (n + 1) * (n + 2) // 2


def test_parse_hom_form():
    p = parse_poly("x0^2 - x1^2 - x2^2")
    assert isinstance(p, HomPoly3) and p.degree == 2
    assert p.coeff((0, 2, 0)) == -1


def test_parse_rational_coefficients_and_parentheses():
    p = parse_poly("1/2*x0*(x1 - 2*x2)")
    assert p.coeff((1, 1, 0)) == Fraction(1, 2) and p.coeff((1, 0, 1)) == -1


def test_parse_univariate_declared_degree():
    p = parse_poly("x - 1", ("x",), degree=3)
    assert isinstance(p, UniPoly) and p.coefficients == [-1, 1, 0, 0]


def test_parse_affine():
    p = parse_poly("1 + x1*x2", ("x1", "x2"))
    assert isinstance(p, AffinePoly2)
    assert homogenize(p) == parse_poly("x0^2 + x1*x2")


@pytest.mark.parametrize(
    "text,pos",
    [("2x0", 1), ("x0 + y", 5), ("x0 ^ 1/2", 5), ("(x0 + x1", 8), ("x0 $ x1", 3), ("", 0)],
)
def test_syntax_errors_report_position(text, pos):
    with pytest.raises(PolySyntaxError) as info:
        parse_poly(text)
    assert info.value.pos == pos


def test_inhomogeneous_form_rejected():
    with pytest.raises(NotHomogeneous):
        parse_poly("x0^2 + x1")


def test_declared_degree_below_actual_rejected():
    with pytest.raises(DegreeMismatch):
        UniPoly([1, 2, 3], 1)


def test_zero_polynomial_keeps_declared_degree():
    z = HomPoly3({}, 3)
    assert z.is_zero() and z.degree == 3 and z.to_text() == "0"


def test_dehomogenize_homogenize_roundtrip():
    p = parse_poly("x0^3 - x0*x1^2 + 2*x2^3")
    assert homogenize(dehomogenize(p)) == p


def test_compose_and_linear_change():
    p = parse_poly("x0^2 - x1^2 - x2^2")
    A = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
    q = linear_change(p, A)
    assert q == parse_poly("x0^2 + 2*x0*x1 - x2^2")
    with pytest.raises(SingularMatrix):
        linear_change(p, [[1, 0, 0], [1, 0, 0], [0, 0, 1]])


def test_coefficient_vector_order():
    p = parse_poly("3*x0*x2 + 5*x1^2")
    assert coefficient_vector(p).tolist() == [0, 0, 3, 5, 0, 0]


coeff = st.integers(min_value=-5, max_value=5)


@settings(max_examples=50, deadline=None)
@given(st.lists(coeff, min_size=6, max_size=6), st.lists(coeff, min_size=3, max_size=3))
def test_text_roundtrip_and_evaluation(cs, point):
    p = HomPoly3(dict(zip(monomials(2), cs)), 2)
    assert parse_poly(p.to_text(), degree=2) == p
    direct = sum(c * point[0] ** e[0] * point[1] ** e[1] * point[2] ** e[2] for e, c in zip(monomials(2), cs))
    assert evaluate(p, point) == direct


@settings(max_examples=40, deadline=None)
@given(st.lists(coeff, min_size=3, max_size=3), st.lists(coeff, min_size=3, max_size=3), st.lists(coeff, min_size=3, max_size=3))
def test_multiplication_is_evaluation_homomorphism(a, b, point):
    p, q = HomPoly3.linear(*a), HomPoly3.linear(*b)
    assert evaluate(p * q, point) == evaluate(p, point) * evaluate(q, point)
    assert (p * q).degree == 2


def test_compose_degree():
    q = parse_poly("x0*x1")
    forms = [parse_poly("x0^2"), parse_poly("x1^2"), parse_poly("x2^2")]
    assert compose(q, forms) == parse_poly("x0^2*x1^2")
