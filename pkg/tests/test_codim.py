"""Tests for codimension computations and their closed forms."""

from __future__ import annotations

from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from utstar.algebra import build_algebra, odd_nilindex
from utstar.codim import (
    CodimReport,
    closed_form_case_sums_ut4,
    closed_form_codim_ut4,
    codim_total,
    codim_type,
    multinomial,
)
from utstar.freepoly import TypeSignature

UT3 = build_algebra(3, (0, 1, 0), "super-reflection")
UT4 = build_algebra(4, (0, 1, 0, 1), "super-symplectic")


def test_closed_form_values():
    assert [closed_form_codim_ut4(n) for n in range(1, 6)] == [4, 30, 264, 2032, 13760]


def test_closed_form_case_sums():
    assert closed_form_case_sums_ut4(1) == {0: 2, 1: 2, 2: 0, 3: 0}
    assert closed_form_case_sums_ut4(3) == {0: 48, 1: 120, 2: 84, 3: 12}
    assert closed_form_case_sums_ut4(4) == {0: 288, 1: 832, 2: 720, 3: 192}
    for n in range(1, 6):
        assert sum(closed_form_case_sums_ut4(n).values()) == closed_form_codim_ut4(n)


def test_codim_type_spot_values():
    assert codim_type(UT4, TypeSignature(1, 0, 0, 0)) == 1
    assert codim_type(UT4, TypeSignature(2, 0, 0, 0)) == 2
    assert codim_type(UT4, TypeSignature(0, 0, 0, 1)) == 1


def test_codim_type_rejects_empty_signature():
    with pytest.raises(ValueError, match="empty signature"):
        codim_type(UT4, TypeSignature(0, 0, 0, 0))


def test_nilpotency_skip_is_exact():
    assert odd_nilindex(UT4) == 4
    assert odd_nilindex(UT3) == 3
    for sig in (TypeSignature(0, 2, 0, 2), TypeSignature(0, 0, 0, 4)):
        assert codim_type(UT4, sig, use_nilpotency_skip=False) == 0
        assert codim_type(UT4, sig, use_nilpotency_skip=True) == 0
    sig3 = TypeSignature(0, 2, 0, 1)
    assert codim_type(UT3, sig3, use_nilpotency_skip=False) == 0
    assert codim_type(UT3, sig3, use_nilpotency_skip=True) == 0


def test_codim_totals_small_n():
    for n in (1, 2, 3):
        report = codim_total(UT4, n)
        assert report.total == closed_form_codim_ut4(n)
        assert report.matches_closed_form() is True
        # weighted sums reconstruct the total
        rebuilt = sum(
            multinomial(n, tuple(sig)) * c for sig, c in report.table.items()
        )
        assert rebuilt == report.total


def test_case_sums_group_by_odd_letter_count():
    report = codim_total(UT4, 2)
    assert report.case_sums == {0: 8, 1: 16, 2: 6}
    assert sum(report.case_sums.values()) == 30


def test_report_without_closed_form():
    report = codim_total(UT3, 2)
    assert report.expected_total is None
    assert report.matches_closed_form() is None
    assert report.total == sum(
        multinomial(2, tuple(sig)) * c for sig, c in report.table.items()
    )


def test_report_json_round_trip():
    report = codim_total(UT4, 2)
    doc = report.to_json()
    assert doc["schema"] == "codim-report/1"
    assert doc["matches_closed_form"] is True
    again = CodimReport.from_json(doc)
    assert again.table == report.table
    assert again.total == report.total
    assert again.case_sums == report.case_sums


@given(
    st.tuples(
        st.integers(min_value=0, max_value=2),
        st.integers(min_value=0, max_value=1),
        st.integers(min_value=0, max_value=2),
        st.integers(min_value=0, max_value=1),
    ).filter(lambda t: 1 <= sum(t) <= 3)
)
@settings(max_examples=20, deadline=None)
def test_codim_bounded_by_word_count(parts):
    sig = TypeSignature(*parts)
    value = codim_type(UT4, sig)
    assert 0 <= value <= factorial(sig.total)


def test_multinomial():
    assert multinomial(4, (1, 1, 1, 1)) == 24
    assert multinomial(4, (2, 2, 0, 0)) == 6
    assert multinomial(5, (5, 0, 0, 0)) == 1
