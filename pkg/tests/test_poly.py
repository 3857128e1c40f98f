"""Tests for the exact sparse polynomial layer."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from utstar.poly import (
    ONE_MONOMIAL,
    ParamId,
    Poly,
    iter_params,
    monomial_degree,
    monomial_mul,
    parse_poly,
    poly_eval,
    poly_mul,
    poly_sum,
)

X = ParamId(1, 1, 1)
Y = ParamId(1, 3, 1)
Z = ParamId(2, 2, 2)


def v(p: ParamId) -> Poly:
    return Poly.variable(p)


# -- strategies ------------------------------------------------------------

params_st = st.builds(
    ParamId,
    st.integers(min_value=1, max_value=3),
    st.integers(min_value=1, max_value=3),
    st.integers(min_value=1, max_value=2),
)

fractions_st = st.fractions(
    min_value=Fraction(-20), max_value=Fraction(20), max_denominator=6
)

monomials_st = st.dictionaries(params_st, st.integers(min_value=1, max_value=3), max_size=3).map(
    lambda d: tuple(sorted(d.items()))
)

polys_st = st.dictionaries(monomials_st, fractions_st, max_size=5).map(Poly)


# -- basic construction ----------------------------------------------------


def test_zero_and_const():
    assert Poly.zero().is_zero()
    assert Poly.const(0).is_zero()
    assert Poly.const(3).constant_value() == 3
    assert Poly.const(Fraction(3, 2)).constant_value() == Fraction(3, 2)
    assert not v(X).is_constant()
    with pytest.raises(ValueError):
        v(X).constant_value()


def test_zero_coefficients_are_dropped():
    p = Poly({ONE_MONOMIAL: Fraction(0), ((X, 1),): Fraction(2)})
    assert p.terms == {((X, 1),): Fraction(2)}
    assert (v(X) - v(X)).is_zero()


def test_monomial_helpers():
    m = monomial_mul(((X, 1),), ((X, 2), (Y, 1)))
    assert m == ((X, 3), (Y, 1))
    assert monomial_degree(m) == 4
    assert monomial_mul(ONE_MONOMIAL, m) == m


def test_params_and_degree():
    p = v(X) * v(X) * v(Y) + Poly.const(7)
    assert p.params() == {X, Y}
    assert p.total_degree() == 3
    assert Poly.zero().total_degree() == 0
    assert list(iter_params([v(X), v(X) + v(Z)])) == [X, Z]


# -- arithmetic ------------------------------------------------------------


def test_frozen_arithmetic_example():
    # (x + 2)(x - 2) == x^2 - 4, exactly.
    p = (v(X) + Poly.const(2)) * (v(X) - Poly.const(2))
    assert p == v(X) * v(X) - Poly.const(4)
    assert poly_eval(p, {X: Fraction(1, 2)}) == Fraction(-15, 4)


def test_poly_sum_and_scale():
    total = poly_sum([v(X), v(X), v(Y)])
    assert total == v(X).scale(2) + v(Y)
    assert total.scale(0).is_zero()
    assert v(X).scale(Fraction(1, 3)).terms == {((X, 1),): Fraction(1, 3)}


@given(polys_st, polys_st, polys_st)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a: Poly, b: Poly, c: Poly):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + Poly.zero() == a
    assert a * Poly.const(1) == a
    assert (a - a).is_zero()
    assert poly_mul(a, Poly.zero()).is_zero()


@given(polys_st, polys_st)
@settings(max_examples=60, deadline=None)
def test_evaluation_is_a_ring_map(a: Poly, b: Poly):
    point = {p: Fraction(i - 2, 3) for i, p in enumerate(sorted(a.params() | b.params()))}
    assert poly_eval(a + b, point) == poly_eval(a, point) + poly_eval(b, point)
    assert poly_eval(a * b, point) == poly_eval(a, point) * poly_eval(b, point)


def test_eval_missing_parameter_is_named():
    p = v(X) + v(Y)
    with pytest.raises(KeyError, match=r"xi\[1,3;1\]"):
        poly_eval(p, {X: 1})


# -- text round-trip -------------------------------------------------------


def test_str_frozen_form():
    p = v(X).scale(Fraction(3, 2)) * v(Y) * v(Y) - v(Z) + Poly.const(4)
    assert str(p) == "3/2*xi[1,1;1]*xi[1,3;1]^2 - xi[2,2;2] + 4"
    assert str(Poly.zero()) == "0"
    assert str(-v(X)) == "-xi[1,1;1]"


def test_parse_examples():
    assert parse_poly("0").is_zero()
    assert parse_poly("-3/2") == Poly.const(Fraction(-3, 2))
    assert parse_poly("xi[1,1;1]*xi[1,1;1]") == v(X) * v(X)
    assert parse_poly("2*xi[1,1;1]^3 - 1") == v(X) * v(X) * v(X) * Poly.const(2) - Poly.const(1)
    assert parse_poly(" xi[1,1;1] + xi[1,1;1]") == v(X).scale(2)


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_poly("xi[1,1;1] + + ")
    with pytest.raises(ValueError):
        parse_poly("foo")
    with pytest.raises(ValueError):
        parse_poly("xi[1,1;1] * * xi[1,1;1] havoc")


@given(polys_st)
@settings(max_examples=80, deadline=None)
def test_parse_print_round_trip(p: Poly):
    assert parse_poly(str(p)) == p
