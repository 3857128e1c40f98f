"""Codimension sequences: exact ranks of multilinear evaluation matrices.

For a type signature (n1, n2, n3, n4) the codimension is the dimension of
the multilinear span modulo the identities of the algebra — computed as the
rank of the matrix whose rows are the n! word evaluations at generic
component elements, with columns indexed by (matrix position, parameter
monomial) pairs.  The n-th total codimension weights each signature's value
by the multinomial coefficient n!/(n1! n2! n3! n4!).

Signatures with at least as many odd letters as the nilpotency index of the
odd part are skipped: every one of their word evaluations is exactly zero
(odd factors advance strictly along a position chain that the algebra
cannot accommodate), so their codimension is 0 without any rank work.

For the 4x4 algebra with grading 0101 and the super-symplectic star map the
report also carries the known closed forms — the total and the partial sums
grouped by odd-letter count — so exact agreement can be asserted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra import StarAlgebraSpec, generic_element, odd_nilindex
from .freepoly import TypeSignature, enumerate_words
from .identities import evaluation_vector
from .linalg import RowReducer
from .matrices import Mat

UT4_CLOSED_FORM_SPEC_ID = "ut4-0101-super-symplectic"


def closed_form_codim_ut4(n: int) -> int:
    """Total codimension closed form for UT4(0101, super-symplectic)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    two = Fraction(2)
    value = (
        two**n * (n + 2)
        - two ** (n - 2) * n * (n - 1)
        + two ** (2 * n - 1) * (n * n - 2)
        + two ** (2 * n - 5) * n * (n - 1) * (n - 2)
    )
    assert value.denominator == 1
    return int(value)


def closed_form_case_sums_ut4(n: int) -> dict[int, int]:
    """Partial sums of the same closed form, grouped by odd-letter count.

    Keys 0..3; counts >= 4 contribute nothing because products of four odd
    elements vanish in this algebra.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    two = Fraction(2)
    sums = {
        0: two ** (n + 1) * (1 + two ** (n - 2) * (n - 2)),
        1: n * two**n * (1 + (n - 1) * two ** (n - 2)),
        2: n * (n - 1) * two ** (n - 2) * (two**n - 1),
        3: n * (n - 1) * (n - 2) * two ** (2 * n - 5),
    }
    out = {}
    for k, v in sums.items():
        assert v.denominator == 1
        out[k] = int(v)
    return out


def codim_type(
    spec: StarAlgebraSpec,
    sig: TypeSignature,
    *,
    use_nilpotency_skip: bool = True,
) -> int:
    """Rank of the word-evaluation matrix for one signature; 0 <= value <= n!."""
    if sig.total < 1:
        raise ValueError("empty signature has no multilinear span")
    if use_nilpotency_skip and sig.odd_count >= odd_nilindex(spec):
        return 0
    letters = sig.variables()
    generics = {
        v: generic_element(spec, v.tag, slot)
        for slot, v in enumerate(sorted(letters), start=1)
    }
    reducer = RowReducer()
    for word in enumerate_words(sig):
        value = Mat.identity(spec.n)
        for v in word:
            value = value * generics[v]
        reducer.add(evaluation_vector(value))
    return reducer.rank


def _signatures(n: int) -> list[TypeSignature]:
    out = []
    for n1 in range(n + 1):
        for n2 in range(n + 1 - n1):
            for n3 in range(n + 1 - n1 - n2):
                out.append(TypeSignature(n1, n2, n3, n - n1 - n2 - n3))
    return out


def multinomial(n: int, parts: tuple[int, ...]) -> int:
    value = factorial(n)
    for p in parts:
        value //= factorial(p)
    return value


@dataclass(frozen=True)
class CodimReport:
    """Per-signature codimensions for one n, with exact weighted totals."""

    spec_id: str
    n: int
    table: dict[TypeSignature, int]
    total: int
    case_sums: dict[int, int]  # odd-letter count -> weighted partial sum
    expected_total: int | None = None
    expected_case_sums: dict[int, int] | None = None

    def matches_closed_form(self) -> bool | None:
        """True/False when a closed form applies, None otherwise."""
        if self.expected_total is None:
            return None
        if self.total != self.expected_total:
            return False
        assert self.expected_case_sums is not None
        for k, expected in self.expected_case_sums.items():
            if self.case_sums.get(k, 0) != expected:
                return False
        return True

    def to_json(self) -> dict:
        doc = {
            "schema": "codim-report/1",
            "spec": self.spec_id,
            "n": self.n,
            "table": {
                ",".join(map(str, sig)): value for sig, value in sorted(self.table.items())
            },
            "total": self.total,
            "case_sums_by_odd_count": {str(k): v for k, v in sorted(self.case_sums.items())},
        }
        if self.expected_total is not None:
            doc["expected_total"] = self.expected_total
            doc["expected_case_sums"] = {
                str(k): v for k, v in sorted((self.expected_case_sums or {}).items())
            }
            doc["matches_closed_form"] = self.matches_closed_form()
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "CodimReport":
        if doc.get("schema") != "codim-report/1":
            raise ValueError(f"unsupported codim report schema: {doc.get('schema')!r}")
        table = {
            TypeSignature(*map(int, key.split(","))): int(value)
            for key, value in doc["table"].items()
        }
        return cls(
            spec_id=doc["spec"],
            n=int(doc["n"]),
            table=table,
            total=int(doc["total"]),
            case_sums={int(k): int(v) for k, v in doc["case_sums_by_odd_count"].items()},
            expected_total=doc.get("expected_total"),
            expected_case_sums=(
                {int(k): int(v) for k, v in doc["expected_case_sums"].items()}
                if "expected_case_sums" in doc
                else None
            ),
        )


def codim_total(spec: StarAlgebraSpec, n: int) -> CodimReport:
    """Full signature table for degree n, with weighted total and case sums."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    table: dict[TypeSignature, int] = {}
    total = 0
    case_sums: dict[int, int] = {k: 0 for k in range(n + 1)}
    for sig in _signatures(n):
        value = codim_type(spec, sig)
        table[sig] = value
        weighted = multinomial(n, tuple(sig)) * value
        total += weighted
        case_sums[sig.odd_count] += weighted
    expected_total = None
    expected_case_sums = None
    if spec.id == UT4_CLOSED_FORM_SPEC_ID:
        expected_total = closed_form_codim_ut4(n)
        expected_case_sums = closed_form_case_sums_ut4(n)
    return CodimReport(
        spec_id=spec.id,
        n=n,
        table=table,
        total=total,
        case_sums=case_sums,
        expected_total=expected_total,
        expected_case_sums=expected_case_sums,
    )
