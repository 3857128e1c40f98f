"""Tests for algebra construction: star tables, twist signs, component bases."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from utstar.algebra import (
    COMPONENT_TAGS,
    ComponentTag,
    StarAlgebraSpec,
    apply_star,
    build_algebra,
    generic_element,
    homogeneous_degree,
    in_component,
    leading_position,
    random_element,
    random_homogeneous,
    spec_from_json,
    spec_to_json,
)
from utstar.matrices import Mat, parse_mat_expr
from utstar.poly import ParamId, Poly

UT3 = build_algebra(3, (0, 1, 0), "super-reflection")
UT4 = build_algebra(4, (0, 1, 0, 1), "super-symplectic")


def basis_exprs(spec: StarAlgebraSpec, label: str) -> list[str]:
    return [str(m) for m in spec.component(label)]


# -- construction and validation ---------------------------------------------


def test_build_validates_inputs():
    with pytest.raises(ValueError, match="unknown star kind"):
        build_algebra(3, (0, 1, 0), "transpose")
    with pytest.raises(ValueError, match="length"):
        build_algebra(3, (0, 1), "reflection")
    with pytest.raises(ValueError, match="0 or 1"):
        build_algebra(2, (0, 2), "reflection")
    with pytest.raises(ValueError, match="even n"):
        build_algebra(3, (0, 1, 0), "symplectic")
    with pytest.raises(ValueError, match="even n"):
        build_algebra(5, (0, 1, 0, 1, 0), "super-symplectic")


def test_unbalanced_grading_is_rejected_citing_the_condition():
    with pytest.raises(ValueError, match=r"g1\+gn = g2\+g\(n-1\)"):
        build_algebra(3, (0, 0, 1), "super-reflection")
    with pytest.raises(ValueError, match="does not satisfy"):
        build_algebra(4, (0, 0, 0, 1), "reflection")


def test_spec_id():
    assert UT4.id == "ut4-0101-super-symplectic"


# -- frozen star tables -------------------------------------------------------


def test_ut4_supersymplectic_star_action_on_units():
    cases = {
        (1, 1): ((4, 4), 1),
        (2, 2): ((3, 3), 1),
        (3, 3): ((2, 2), 1),
        (4, 4): ((1, 1), 1),
        (1, 2): ((3, 4), 1),
        (2, 3): ((2, 3), -1),
        (3, 4): ((1, 2), 1),
        (1, 3): ((2, 4), 1),
        (2, 4): ((1, 3), 1),
        (1, 4): ((1, 4), 1),
    }
    assert UT4.star_table == cases


def test_ut3_superreflection_star_action_on_units():
    assert UT3.star_table == {
        (1, 1): ((3, 3), 1),
        (2, 2): ((2, 2), 1),
        (3, 3): ((1, 1), 1),
        (1, 2): ((2, 3), 1),
        (2, 3): ((1, 2), 1),
        (1, 3): ((1, 3), -1),
    }


def test_apply_star_examples():
    assert apply_star(UT4, Mat.unit(4, 1, 1)) == Mat.unit(4, 4, 4)
    assert apply_star(UT4, Mat.unit(4, 2, 3)) == -Mat.unit(4, 2, 3)
    assert apply_star(UT3, Mat.unit(3, 1, 3)) == -Mat.unit(3, 1, 3)
    with pytest.raises(ValueError, match="size"):
        apply_star(UT3, Mat.unit(4, 1, 1))


def test_twist_signs():
    assert UT4.phi_signs == {
        (1, 1): 1, (2, 2): 1, (3, 3): 1, (4, 4): 1,
        (1, 2): 1, (2, 3): 1, (3, 4): 1,
        (1, 3): -1, (2, 4): -1,
        (1, 4): -1,
    }


# -- frozen component bases ---------------------------------------------------


def test_ut4_component_bases_match_expected_display():
    assert UT4.dims() == (3, 3, 2, 2)
    assert basis_exprs(UT4, "A0+") == ["e11 + e44", "e22 + e33", "e13 + e24"]
    assert basis_exprs(UT4, "A0-") == ["e11 - e44", "e22 - e33", "e13 - e24"]
    assert basis_exprs(UT4, "A1+") == ["e14", "e12 + e34"]
    assert basis_exprs(UT4, "A1-") == ["e23", "e12 - e34"]


def test_ut3_component_bases_match_expected_display():
    assert UT3.dims() == (2, 2, 1, 1)
    assert basis_exprs(UT3, "A0+") == ["e11 + e33", "e22"]
    assert basis_exprs(UT3, "A0-") == ["e11 - e33", "e13"]
    assert basis_exprs(UT3, "A1+") == ["e12 + e23"]
    assert basis_exprs(UT3, "A1-") == ["e12 - e23"]


def test_ut4_superreflection_bases():
    spec = build_algebra(4, (0, 1, 0, 1), "super-reflection")
    assert basis_exprs(spec, "A0+") == ["e11 + e44", "e22 + e33", "e13 - e24"]
    assert basis_exprs(spec, "A0-") == ["e11 - e44", "e22 - e33", "e13 + e24"]
    assert basis_exprs(spec, "A1+") == ["e23", "e12 + e34"]
    assert basis_exprs(spec, "A1-") == ["e14", "e12 - e34"]


def test_degenerate_odd_part_collapses_to_plain_reflection():
    # n=2: the odd part squares to zero, so the twist is trivial
    a = build_algebra(2, (0, 1), "super-reflection")
    b = build_algebra(2, (0, 1), "reflection")
    assert a.star_table == b.star_table
    assert a.components == b.components


def test_component_membership_and_degree():
    assert in_component(UT4, parse_mat_expr("e13 + e24", 4), ComponentTag(0, "+"))
    assert not in_component(UT4, parse_mat_expr("e13 + e24", 4), ComponentTag(0, "-"))
    assert not in_component(UT4, parse_mat_expr("e23", 4), ComponentTag(0, "+"))
    assert homogeneous_degree(UT4, parse_mat_expr("e12 + e14", 4)) == 1
    assert homogeneous_degree(UT4, parse_mat_expr("e11 + e12", 4)) is None


# -- generic and random elements ----------------------------------------------


def test_generic_element_parameter_naming():
    g = generic_element(UT3, ComponentTag(0, "-"), slot=1)
    x11 = Poly.variable(ParamId(1, 1, 1))
    x13 = Poly.variable(ParamId(1, 3, 1))
    assert g.entry(1, 1) == x11
    assert g.entry(3, 3) == -x11
    assert g.entry(1, 3) == x13
    assert g.support() == {(1, 1), (3, 3), (1, 3)}


def test_generic_element_slots_are_disjoint():
    g1 = generic_element(UT4, ComponentTag(1, "+"), slot=1)
    g2 = generic_element(UT4, ComponentTag(1, "+"), slot=2)
    params1 = {p for poly in g1.entries.values() for p in poly.params()}
    params2 = {p for poly in g2.entries.values() for p in poly.params()}
    assert params1 == {ParamId(1, 4, 1), ParamId(1, 2, 1)}
    assert params1.isdisjoint(params2)


def test_generic_element_empty_component_errors():
    spec = build_algebra(1, (0,), "reflection")
    assert spec.dims() == (1, 0, 0, 0)
    with pytest.raises(ValueError, match="empty"):
        generic_element(spec, ComponentTag(1, "+"), slot=1)


def test_random_element_is_deterministic_and_in_span():
    a = random_element(UT4, ComponentTag(0, "+"), seed=7)
    b = random_element(UT4, ComponentTag(0, "+"), seed=7)
    assert a == b
    assert in_component(UT4, a, ComponentTag(0, "+"))
    tiny = random_element(UT4, ComponentTag(0, "-"), seed=3, bound=1)
    assert all(
        c in (Fraction(-1), Fraction(1)) for c in tiny.constant_entries().values()
    )


def test_leading_position():
    assert leading_position(parse_mat_expr("e22 + e33", 4)) == (2, 2)
    with pytest.raises(ValueError):
        leading_position(Mat.zero(3))


# -- star-map properties -------------------------------------------------------

specs_st = st.sampled_from(
    [
        UT3,
        UT4,
        build_algebra(4, (0, 1, 0, 1), "super-reflection"),
        build_algebra(3, (0, 0, 0), "reflection"),
        build_algebra(4, (0, 0, 0, 0), "symplectic"),
        build_algebra(5, (0, 1, 0, 1, 0), "super-reflection"),
    ]
)


@given(specs_st, st.integers(min_value=0, max_value=10_000))
@settings(max_examples=80, deadline=None)
def test_star_has_order_two(spec, seed):
    rng = random.Random(seed)
    m = random_homogeneous(spec, rng.choice((0, 1)), rng)
    assert apply_star(spec, apply_star(spec, m)) == m


@given(specs_st, st.integers(min_value=0, max_value=10_000))
@settings(max_examples=80, deadline=None)
def test_star_sign_rule(spec, seed):
    rng = random.Random(seed)
    pa, pb = rng.choice((0, 1)), rng.choice((0, 1))
    a = random_homogeneous(spec, pa, rng)
    b = random_homogeneous(spec, pb, rng)
    lhs = apply_star(spec, a * b)
    rhs = (apply_star(spec, b) * apply_star(spec, a)).scale((-1) ** (pa * pb))
    assert lhs == rhs


@given(specs_st)
@settings(max_examples=30, deadline=None)
def test_star_preserves_degrees_and_components_decompose(spec):
    for (i, j), ((p, q), _) in spec.star_table.items():
        assert spec.degree(i, j) == spec.degree(p, q)
    # component dimensions fill the whole upper triangle
    assert sum(spec.dims()) == spec.n * (spec.n + 1) // 2
    for tag in COMPONENT_TAGS:
        for b in spec.component(tag):
            assert in_component(spec, b, tag)


# -- serialization --------------------------------------------------------------


def test_json_round_trip():
    doc = spec_to_json(UT4)
    assert doc["schema"] == "star-algebra/1"
    again = spec_from_json(doc)
    assert again == UT4


def test_json_detects_tampering():
    doc = spec_to_json(UT3)
    doc["star_table"][0][4] = -doc["star_table"][0][4]
    with pytest.raises(ValueError, match="star table"):
        spec_from_json(doc)


def test_component_tag_labels():
    assert ComponentTag.from_label("A1-") == ComponentTag(1, "-")
    assert ComponentTag(0, "+").label == "A0+"
    with pytest.raises(ValueError):
        ComponentTag.from_label("B0+")
