"""Tests for free *-algebra words, parsing, schemas, and substitution."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from utstar.algebra import build_algebra
from utstar.freepoly import (
    StarPoly,
    TypeSignature,
    VarSymbol,
    commutator,
    enumerate_words,
    parse_schema,
    parse_star_poly,
    substitute,
)
from utstar.matrices import Mat, parse_mat_expr

Y1p = VarSymbol("y", "+", 1)
Y2p = VarSymbol("y", "+", 2)
Y1m = VarSymbol("y", "-", 1)
Y2m = VarSymbol("y", "-", 2)
Z1p = VarSymbol("z", "+", 1)

UT3 = build_algebra(3, (0, 1, 0), "super-reflection")
UT4 = build_algebra(4, (0, 1, 0, 1), "super-symplectic")


def w(*symbols: VarSymbol) -> StarPoly:
    return StarPoly.from_word(symbols)


# -- parsing -------------------------------------------------------------------


def test_parse_simple_commutator():
    assert parse_star_poly("[y1-,y2-]") == w(Y1m, Y2m) - w(Y2m, Y1m)


def test_parse_left_normed_commutator():
    f = parse_star_poly("[y1+,y2+,y3+]")
    y3 = VarSymbol("y", "+", 3)
    expected = (
        w(Y1p, Y2p, y3) - w(Y2p, Y1p, y3) - w(y3, Y1p, Y2p) + w(y3, Y2p, Y1p)
    )
    assert f == expected
    assert len(f.terms) == 4
    assert all(abs(c) == 1 for c in f.terms.values())


def test_parse_coefficients_and_signs():
    f = parse_star_poly("2/3 y1+ z1- - z1- y1+")
    zm = VarSymbol("z", "-", 1)
    assert f.terms == {
        (Y1p, zm): Fraction(2, 3),
        (zm, Y1p): Fraction(-1),
    }
    assert parse_star_poly("0").is_zero()
    assert parse_star_poly("- y1+ + y1+").is_zero()


def test_parse_products_of_commutators():
    f = parse_star_poly("[y1-,y2-] [y3-,y4-]")
    y3, y4 = VarSymbol("y", "-", 3), VarSymbol("y", "-", 4)
    assert f == commutator(w(Y1m), w(Y2m)) * commutator(w(y3), w(y4))
    assert len(f.terms) == 4


def test_parse_errors():
    with pytest.raises(ValueError, match="schema"):
        parse_star_poly("y1 y2+")
    with pytest.raises(ValueError, match="schema"):
        parse_star_poly("x1 z2+")
    with pytest.raises(ValueError, match="position"):
        parse_star_poly("y1+ & y2+")
    with pytest.raises(ValueError, match="two entries"):
        parse_star_poly("[y1+]")
    with pytest.raises(ValueError, match="unterminated"):
        parse_star_poly("[y1+, y2+")
    with pytest.raises(ValueError, match="lead"):
        parse_star_poly("y1+ 2 y2+")
    with pytest.raises(ValueError, match="dangling"):
        parse_star_poly("y1+ -")
    with pytest.raises(ValueError, match="variables"):
        parse_star_poly("3/2")


def test_schema_expansion_single_z():
    variants = parse_schema("z1 [y2-, y3-]")
    assert len(variants) == 2
    texts = [str(v) for v in variants]
    assert texts[0].startswith("z1+") or "z1+" in texts[0]
    assert all(len(v.terms) == 2 for v in variants)
    # concrete text parses to the same polynomials
    assert variants[0] == parse_star_poly("z1+ y2- y3- - z1+ y3- y2-")


def test_schema_expansion_is_consistent_per_placeholder():
    # one unsigned z used twice expands to two, not four, variants
    variants = parse_schema("z1 y2+ z1")
    assert len(variants) == 2
    for v in variants:
        (word,) = list(v.terms)
        assert word[0] == word[2]


def test_schema_expansion_x_wildcard():
    variants = parse_schema("x1 y2+")
    assert len(variants) == 4
    firsts = [next(iter(v.terms))[0] for v in variants]
    assert firsts == [
        VarSymbol("y", "+", 1),
        VarSymbol("y", "-", 1),
        VarSymbol("z", "+", 1),
        VarSymbol("z", "-", 1),
    ]


def test_schema_triple_z_expands_to_eight():
    assert len(parse_schema("z1 z2 z3 - z3 z2 z1")) == 8


def test_schema_concrete_text_passes_through():
    assert parse_schema("[y1+,y2+]") == [parse_star_poly("[y1+,y2+]")]


def test_schema_collision_is_rejected():
    with pytest.raises(ValueError, match="collides"):
        parse_schema("y1 y1+")
    with pytest.raises(ValueError, match="sign"):
        parse_schema("x1+ y2+")


# -- printing ------------------------------------------------------------------


def test_str_form():
    f = w(Y1p, Z1p).scale(Fraction(2, 3)) - w(Z1p, Y1p)
    assert str(f) == "2/3 y1+ z1+ - z1+ y1+"
    assert str(StarPoly.zero()) == "0"


words_st = st.lists(
    st.builds(
        VarSymbol,
        st.sampled_from("yz"),
        st.sampled_from("+-"),
        st.integers(min_value=1, max_value=4),
    ),
    min_size=1,
    max_size=4,
).map(tuple)

star_polys_st = st.dictionaries(
    words_st,
    st.fractions(min_value=Fraction(-8), max_value=Fraction(8), max_denominator=4),
    max_size=4,
).map(StarPoly)


@given(star_polys_st)
@settings(max_examples=80, deadline=None)
def test_parse_print_round_trip(f: StarPoly):
    assert parse_star_poly(str(f)) == f


# -- signatures and word enumeration --------------------------------------------


def test_signature_variables_positional_convention():
    sig = TypeSignature(2, 1, 1, 0)
    assert sig.variables() == (
        VarSymbol("y", "+", 1),
        VarSymbol("y", "+", 2),
        VarSymbol("z", "+", 3),
        VarSymbol("y", "-", 4),
    )
    assert sig.total == 4
    assert sig.odd_count == 1


def test_enumerate_words_examples():
    assert enumerate_words(TypeSignature(2, 0, 0, 0)) == [
        (Y1p, Y2p),
        (Y2p, Y1p),
    ]
    z2 = VarSymbol("z", "+", 2)
    assert enumerate_words(TypeSignature(1, 1, 0, 0)) == [(Y1p, z2), (z2, Y1p)]
    six = enumerate_words(TypeSignature(0, 0, 0, 3))
    assert len(six) == 6
    assert len(set(six)) == 6
    assert all(len(word) == 3 for word in six)


def test_enumerate_words_rejects_empty_signature():
    with pytest.raises(ValueError, match="empty signature"):
        enumerate_words(TypeSignature(0, 0, 0, 0))


# -- substitution ----------------------------------------------------------------


def test_substitute_frozen_example():
    f = w(Y1p, Y2p)
    value = substitute(
        f,
        {
            Y1p: parse_mat_expr("e11+e44", 4),
            Y2p: parse_mat_expr("e13+e24", 4),
        },
        UT4,
    )
    assert value == parse_mat_expr("e13", 4)


def test_substitute_is_linear_in_slots():
    f = parse_star_poly("[y1+, y2+]")
    a = parse_mat_expr("e11+e44", 4)
    b = parse_mat_expr("e13+e24", 4)
    base = substitute(f, {Y1p: a, Y2p: b}, UT4)
    scaled = substitute(f, {Y1p: a, Y2p: b.scale(Fraction(5, 2))}, UT4)
    assert scaled == base.scale(Fraction(5, 2))
    assert base == parse_mat_expr("e13 - e24", 4)


def test_substitute_checks_assignment():
    f = w(Y1p, Y2p)
    a = parse_mat_expr("e11+e44", 4)
    with pytest.raises(ValueError, match="no matrix assigned to variable y2\\+"):
        substitute(f, {Y1p: a}, UT4)
    with pytest.raises(ValueError, match=r"y1\+ is not in component A0\+"):
        substitute(f, {Y1p: parse_mat_expr("e23", 4), Y2p: a}, UT4)


def test_substitute_odd_product_in_ut3():
    # product of two odd elements lands in the corner span
    z1m = VarSymbol("z", "-", 1)
    z2p = VarSymbol("z", "+", 2)
    value = substitute(
        StarPoly.from_word((z1m, z2p)),
        {
            z1m: parse_mat_expr("e12 - e23", 3),
            z2p: parse_mat_expr("e12 + e23", 3),
        },
        UT3,
    )
    assert value == parse_mat_expr("e13", 3)
