"""Tests for the Buchberger implementation, cross-checked against sympy."""

from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from utstar.groebner import (
    GroebnerBasis,
    SolverIncomplete,
    groebner_basis,
    ideal_contains_one,
)
from utstar.poly import ParamId, Poly

X = ParamId(1, 1, 1)
Y = ParamId(1, 2, 1)
Z = ParamId(2, 2, 1)


def v(p: ParamId) -> Poly:
    return Poly.variable(p)


def test_unit_ideal_from_xy_minus_one_and_x():
    gb = groebner_basis([v(X) * v(Y) - Poly.const(1), v(X)])
    assert [str(p) for p in gb.polys] == ["1"]
    assert gb.contains_one()
    assert ideal_contains_one([v(X) * v(Y) - Poly.const(1), v(X)])


def test_principal_ideal_is_kept_as_is():
    gb = groebner_basis([v(X) * v(X)])
    assert [str(p) for p in gb.polys] == ["xi[1,1;1]^2"]
    assert not gb.contains_one()


def test_membership_system_for_infeasible_target():
    # a1*b2 = 1, a2*b1 = 1, a2*b2 = 0, a3*b2 = 0 has no solution:
    # the first two force a2, b2 nonzero, contradicting the third.
    a1, a2, a3 = (ParamId(1, 1, 1), ParamId(2, 2, 1), ParamId(3, 3, 1))
    b1, b2 = (ParamId(1, 1, 2), ParamId(2, 2, 2))
    system = [
        v(a1) * v(b2) - Poly.const(1),
        v(a2) * v(b1) - Poly.const(1),
        v(a2) * v(b2),
        v(a3) * v(b2),
    ]
    assert ideal_contains_one(system)


def test_reduce_gives_zero_exactly_on_members():
    gb = groebner_basis([v(X) * v(X), v(Y) * v(Y)])
    assert gb.reduce(v(X) * v(X) * v(Y) + Poly.const(3)) == Poly.const(3)
    assert gb.reduce(v(X) * v(X) * v(Y)).is_zero()
    assert gb.reduce(v(X) * v(Y)) == v(X) * v(Y)


def test_cap_raises_solver_incomplete():
    with pytest.raises(SolverIncomplete, match="solver incomplete"):
        groebner_basis([v(X) * v(Y) - Poly.const(1), v(X)], max_reductions=0)


def test_empty_and_zero_generators():
    gb = groebner_basis([Poly.zero()])
    assert gb.polys == ()
    assert not gb.contains_one()
    assert not ideal_contains_one([])


# -- randomized cross-check against sympy ------------------------------------

params_st = st.sampled_from([X, Y, Z])
monomials_st = st.dictionaries(params_st, st.integers(min_value=1, max_value=2), max_size=2).map(
    lambda d: tuple(sorted(d.items()))
)
coeffs_st = st.fractions(min_value=Fraction(-4), max_value=Fraction(4), max_denominator=2)
polys_st = st.dictionaries(monomials_st, coeffs_st, min_size=1, max_size=3).map(Poly)


def _to_sympy(p: Poly, symbols: dict[ParamId, sympy.Symbol]):
    expr = sympy.Integer(0)
    for mono, coeff in p.terms.items():
        term = sympy.Rational(coeff.numerator, coeff.denominator)
        for param, exp in mono:
            term *= symbols[param] ** exp
        expr += term
    return expr


@given(st.lists(polys_st, min_size=1, max_size=3))
@settings(max_examples=40, deadline=None)
def test_reduced_basis_matches_sympy(gens):
    gens = [g for g in gens if not g.is_zero()]
    assume(gens)
    variables = sorted({p for g in gens for p in g.params()})
    assume(variables)
    gb = groebner_basis(gens, max_reductions=5000)

    symbols = {p: sympy.Symbol(str(p)) for p in variables}
    # sympy lists generators biggest-first; our variable tuple is ascending.
    gens_desc = [symbols[p] for p in reversed(variables)]
    reference = sympy.groebner(
        [_to_sympy(g, symbols) for g in gens], *gens_desc, order="grevlex"
    )
    # sympy clears denominators; compare monic forms.
    ours = {sympy.Poly(_to_sympy(p, symbols), *gens_desc, domain="QQ").monic() for p in gb.polys}
    theirs = {sympy.Poly(e, *gens_desc, domain="QQ").monic() for e in reference.exprs}
    assert ours == theirs


@given(st.lists(polys_st, min_size=1, max_size=3), polys_st)
@settings(max_examples=25, deadline=None)
def test_reduce_is_idempotent_and_linear_over_members(gens, extra):
    gens = [g for g in gens if not g.is_zero()]
    assume(gens)
    gb = groebner_basis(gens, max_reductions=5000)
    r = gb.reduce(extra)
    assert gb.reduce(r) == r
    assert gb.reduce(extra + gens[0]) == r
