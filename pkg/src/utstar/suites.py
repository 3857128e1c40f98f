"""Runner for the packaged identity/fixture suites.

A suite is a catalog file shipped under ``utstar/catalogs`` (see
``catalog_build`` for the format).  Running a suite checks every line against
a star-algebra spec:

* ``identity`` lines (schemas allowed) must pass the exact identity check;
  a schema that expands to the zero polynomial passes trivially;
* ``not-identity`` lines must fail it, and the refuting witness is
  re-substituted to confirm a nonzero value;
* ``evaluate`` lines must reproduce their stated matrix exactly.

The report records one pass/fail entry per expanded item; ``passed`` always
means "behaved as the catalog expects", so a fully green mutant suite is one
where every mutant was refuted.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .algebra import StarAlgebraSpec
from .catalog_build import parse_assignments
from .freepoly import parse_schema, parse_star_poly, substitute
from .identities import is_identity
from .matrices import format_mat, parse_mat_expr

SUITE_REPORT_SCHEMA = "suite-report/1"


@dataclass(frozen=True)
class CatalogItem:
    """One line of a catalog file."""

    item_id: str
    kind: str
    poly_text: str
    assignment_text: str | None = None
    expected_text: str | None = None


@dataclass(frozen=True)
class Catalog:
    """A parsed catalog: header fields plus items."""

    catalog_id: str
    n: int
    grading: tuple[int, ...]
    kind: str
    items: tuple[CatalogItem, ...]


def _catalog_dir():
    return resources.files("utstar").joinpath("catalogs")


def available_suites() -> list[str]:
    """Sorted ids of the catalogs shipped with the package."""
    return sorted(
        entry.name[: -len(".txt")]
        for entry in _catalog_dir().iterdir()
        if entry.name.endswith(".txt")
    )


def parse_catalog(text: str) -> Catalog:
    """Parse catalog text; raises ``ValueError`` on malformed content."""
    header: dict[str, str] = {}
    items: list[CatalogItem] = []
    in_body = False
    for raw_line in text.splitlines():
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if line == "---":
            in_body = True
            continue
        if not in_body:
            key, sep, value = line.partition(":")
            if not sep:
                raise ValueError(f"malformed catalog header line {line!r}")
            header[key.strip()] = value.strip()
            continue
        fields = [field.strip() for field in line.split("|")]
        if len(fields) == 3:
            item_id, kind, poly_text = fields
            if kind not in ("identity", "not-identity"):
                raise ValueError(f"unexpected catalog item kind {kind!r}")
            items.append(CatalogItem(item_id, kind, poly_text))
        elif len(fields) == 5:
            item_id, kind, poly_text, assignment_text, expected_text = fields
            if kind != "evaluate":
                raise ValueError(f"unexpected catalog item kind {kind!r}")
            items.append(
                CatalogItem(item_id, kind, poly_text, assignment_text, expected_text)
            )
        else:
            raise ValueError(f"malformed catalog item line {line!r}")
    if header.get("catalog-format") != "1":
        raise ValueError(f"unsupported catalog format {header.get('catalog-format')!r}")
    missing = {"catalog-id", "algebra-n", "algebra-grading", "algebra-kind"} - set(header)
    if missing:
        raise ValueError(f"catalog header missing fields {sorted(missing)}")
    seen: set[str] = set()
    for item in items:
        if item.item_id in seen:
            raise ValueError(f"duplicate catalog item id {item.item_id!r}")
        seen.add(item.item_id)
    return Catalog(
        catalog_id=header["catalog-id"],
        n=int(header["algebra-n"]),
        grading=tuple(int(ch) for ch in header["algebra-grading"]),
        kind=header["algebra-kind"],
        items=tuple(items),
    )


def load_catalog(suite_id: str) -> Catalog:
    """Load a packaged catalog by suite id; unknown ids raise ``ValueError``."""
    path = _catalog_dir().joinpath(f"{suite_id}.txt")
    if not path.is_file():
        known = ", ".join(available_suites())
        raise ValueError(f"unknown suite id {suite_id!r}; available suites: {known}")
    return parse_catalog(path.read_text())


@dataclass(frozen=True)
class SuiteItemResult:
    """Outcome of one expanded catalog item."""

    item_id: str
    kind: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class SuiteReport:
    """Per-item outcomes of a suite run against one spec."""

    suite_id: str
    spec_id: str
    results: tuple[SuiteItemResult, ...]

    @property
    def passed_count(self) -> int:
        return sum(1 for result in self.results if result.passed)

    @property
    def failed_count(self) -> int:
        return len(self.results) - self.passed_count

    @property
    def all_passed(self) -> bool:
        return self.failed_count == 0

    def summary_lines(self) -> list[str]:
        lines = [
            f"suite {self.suite_id} on {self.spec_id}: "
            f"{self.passed_count}/{len(self.results)} items as expected"
        ]
        for result in self.results:
            status = "PASS" if result.passed else "FAIL"
            suffix = f": {result.detail}" if result.detail else ""
            lines.append(f"{status} {result.item_id}{suffix}")
        return lines

    def to_json(self) -> dict:
        return {
            "schema": SUITE_REPORT_SCHEMA,
            "suite": self.suite_id,
            "spec": self.spec_id,
            "passed": self.passed_count,
            "failed": self.failed_count,
            "results": [
                {
                    "id": result.item_id,
                    "kind": result.kind,
                    "passed": result.passed,
                    "detail": result.detail,
                }
                for result in self.results
            ],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SuiteReport":
        if doc.get("schema") != SUITE_REPORT_SCHEMA:
            raise ValueError(f"unsupported suite report schema {doc.get('schema')!r}")
        results = tuple(
            SuiteItemResult(entry["id"], entry["kind"], entry["passed"], entry["detail"])
            for entry in doc["results"]
        )
        return cls(doc["suite"], doc["spec"], results)


def _witness_detail(verdict) -> str:
    assignments = ", ".join(
        f"{var}={format_mat(mat)}" for var, mat in sorted(verdict.witness.items())
    )
    return f"value {format_mat(verdict.value)} at {assignments}"


def _run_identity_item(item: CatalogItem, spec: StarAlgebraSpec) -> list[SuiteItemResult]:
    variants = parse_schema(item.poly_text)
    results = []
    for index, variant in enumerate(variants):
        name = item.item_id if len(variants) == 1 else f"{item.item_id}[{index}]"
        if variant.is_zero():
            results.append(
                SuiteItemResult(name, item.kind, True, "zero polynomial; trivial")
            )
            continue
        verdict = is_identity(variant, spec)
        if item.kind == "identity":
            passed = verdict.is_identity
            detail = "" if passed else f"refuted, {_witness_detail(verdict)}"
        else:
            confirmed = (
                not verdict.is_identity
                and not verdict.value.is_zero()
                and substitute(variant, verdict.witness, spec) == verdict.value
            )
            passed = confirmed
            detail = (
                f"non-identity confirmed, {_witness_detail(verdict)}"
                if confirmed
                else "expected a refutation but the identity check passed"
            )
        results.append(SuiteItemResult(name, item.kind, passed, detail))
    return results


def _run_evaluate_item(item: CatalogItem, spec: StarAlgebraSpec) -> SuiteItemResult:
    poly = parse_star_poly(item.poly_text)
    assignment = parse_assignments(item.assignment_text or "", spec.n)
    expected = parse_mat_expr(item.expected_text or "", spec.n)
    value = substitute(poly, assignment, spec)
    if value == expected:
        return SuiteItemResult(item.item_id, item.kind, True, "")
    detail = f"expected {format_mat(expected)}, got {format_mat(value)}"
    return SuiteItemResult(item.item_id, item.kind, False, detail)


def run_suite(spec: StarAlgebraSpec, suite_id: str) -> SuiteReport:
    """Run every item of the named suite against ``spec``.

    Raises ``ValueError`` for an unknown suite id or when the suite targets a
    different algebra than ``spec``.
    """
    catalog = load_catalog(suite_id)
    if (catalog.n, catalog.grading, catalog.kind) != (spec.n, spec.grading, spec.kind):
        raise ValueError(
            f"suite {suite_id} targets n={catalog.n} grading="
            f"{''.join(map(str, catalog.grading))} kind={catalog.kind}, "
            f"not {spec.id}"
        )
    results: list[SuiteItemResult] = []
    for item in catalog.items:
        if item.kind == "evaluate":
            results.append(_run_evaluate_item(item, spec))
        else:
            results.extend(_run_identity_item(item, spec))
    return SuiteReport(suite_id=suite_id, spec_id=spec.id, results=tuple(results))
