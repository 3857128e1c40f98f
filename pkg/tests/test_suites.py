"""Tests for the packaged suite catalogs and the suite runner."""

from __future__ import annotations

import pytest

from utstar.algebra import build_algebra
from utstar.catalog_build import render_all
from utstar.suites import (
    CatalogItem,
    SuiteReport,
    _run_evaluate_item,
    _run_identity_item,
    available_suites,
    load_catalog,
    parse_catalog,
    run_suite,
)


@pytest.fixture(scope="module")
def ut3_spec():
    return build_algebra(3, (0, 1, 0), "super-reflection")


@pytest.fixture(scope="module")
def ut4_spec():
    return build_algebra(4, (0, 1, 0, 1), "super-symplectic")


def test_available_suites():
    assert available_suites() == [
        "ut3-010-superreflection",
        "ut4-0101-supersymplectic",
        "ut4-0101-supersymplectic-evaluations",
        "ut4-0101-supersymplectic-mutated",
    ]


def test_shipped_catalogs_match_generator():
    from importlib import resources

    catalog_dir = resources.files("utstar").joinpath("catalogs")
    for name, content in render_all().items():
        assert catalog_dir.joinpath(name).read_text() == content


def test_ut3_suite_all_pass(ut3_spec):
    report = run_suite(ut3_spec, "ut3-010-superreflection")
    assert report.all_passed
    assert len(report.results) == 27
    assert report.spec_id == "ut3-010-super-reflection"


def test_ut4_suite_all_pass(ut4_spec):
    report = run_suite(ut4_spec, "ut4-0101-supersymplectic")
    assert report.all_passed
    assert len(report.results) == 1211


def test_mutant_suite_all_refuted(ut4_spec):
    report = run_suite(ut4_spec, "ut4-0101-supersymplectic-mutated")
    assert report.all_passed
    assert len(report.results) >= 20
    for result in report.results:
        assert result.kind == "not-identity"
        assert "non-identity confirmed" in result.detail
        assert "value" in result.detail


def test_evaluation_suite_all_match(ut4_spec):
    report = run_suite(ut4_spec, "ut4-0101-supersymplectic-evaluations")
    assert report.all_passed
    assert len(report.results) == 202


def test_unknown_suite(ut4_spec):
    with pytest.raises(ValueError, match="unknown suite id"):
        run_suite(ut4_spec, "no-such-suite")


def test_suite_spec_mismatch(ut3_spec):
    with pytest.raises(ValueError, match="targets"):
        run_suite(ut3_spec, "ut4-0101-supersymplectic")


def test_catalog_header_validation():
    with pytest.raises(ValueError, match="unsupported catalog format"):
        parse_catalog("catalog-format: 9\n---\n")
    with pytest.raises(ValueError, match="missing fields"):
        parse_catalog("catalog-format: 1\n---\n")
    good_header = (
        "catalog-format: 1\ncatalog-id: t\nalgebra-n: 3\n"
        "algebra-grading: 010\nalgebra-kind: super-reflection\n---\n"
    )
    with pytest.raises(ValueError, match="unexpected catalog item kind"):
        parse_catalog(good_header + "a | bogus | y1+\n")
    with pytest.raises(ValueError, match="duplicate catalog item id"):
        parse_catalog(good_header + "a | identity | y1+ y2+\na | identity | [y1+, y2+]\n")


def test_catalog_parse_roundtrip():
    catalog = load_catalog("ut3-010-superreflection")
    assert catalog.n == 3
    assert catalog.grading == (0, 1, 0)
    assert catalog.kind == "super-reflection"
    assert catalog.items[0].item_id == "sym-sym-commutator"
    assert all(item.kind == "identity" for item in catalog.items)


def test_failing_identity_line_reports_witness(ut3_spec):
    # z1+ z2+ is not an identity, so an identity line for it must fail
    # and carry the refuting assignment in the detail.
    results = _run_identity_item(CatalogItem("bad", "identity", "z1+ z2+"), ut3_spec)
    assert len(results) == 1
    assert not results[0].passed
    assert "refuted" in results[0].detail


def test_not_identity_line_on_true_identity_fails(ut3_spec):
    results = _run_identity_item(
        CatalogItem("bad", "not-identity", "[y1+, y2+]"), ut3_spec
    )
    assert not results[0].passed
    assert "expected a refutation" in results[0].detail


def test_evaluate_line_mismatch_reports_both_values(ut3_spec):
    item = CatalogItem("bad", "evaluate", "y1+ y2+", "y1+=e22; y2+=e22", "e11")
    result = _run_evaluate_item(item, ut3_spec)
    assert not result.passed
    assert "expected e11, got e22" in result.detail


def test_schema_line_expands_to_indexed_results(ut3_spec):
    results = _run_identity_item(CatalogItem("odd-triple", "identity", "z1 z2 z3"), ut3_spec)
    assert [result.item_id for result in results] == [
        f"odd-triple[{i}]" for i in range(8)
    ]
    assert all(result.passed for result in results)


def test_report_json_roundtrip(ut3_spec):
    report = run_suite(ut3_spec, "ut3-010-superreflection")
    doc = report.to_json()
    assert doc["schema"] == "suite-report/1"
    assert doc["passed"] == 27
    assert doc["failed"] == 0
    restored = SuiteReport.from_json(doc)
    assert restored == report


def test_summary_lines_format(ut3_spec):
    report = run_suite(ut3_spec, "ut3-010-superreflection")
    lines = report.summary_lines()
    assert lines[0] == (
        "suite ut3-010-superreflection on ut3-010-super-reflection: "
        "27/27 items as expected"
    )
    assert lines[1].startswith("PASS sym-sym-commutator")
