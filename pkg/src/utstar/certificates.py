"""Standalone re-checking of serialized membership certificates.

A certificate (schema ``certificate/1``) freezes a polynomial constraint
system together with either a satisfying assignment ("witness" kind: the
target provably IS a value of the polynomial map) or a Groebner basis
containing 1 ("infeasible" kind: the target provably is NOT a value).  This
module re-checks those claims using exact polynomial arithmetic alone — no
matrix algebra and no knowledge of where the constraints came from — so a
verifier can audit a shipped report without trusting the code that
produced it.

Checks performed:

* both kinds: the document is well-formed and every constraint parses;
* witness: each constraint evaluates to exactly zero at the assignment;
* infeasible: the stored basis contains a nonzero constant, reduces 1 to
  zero, and equals the Groebner basis recomputed from the constraints.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .groebner import GroebnerBasis, SolverIncomplete, groebner_basis
from .poly import ParamId, Poly, parse_poly, poly_eval

CERTIFICATE_SCHEMA = "certificate/1"

CERTIFICATE_KINDS = ("witness", "infeasible")

_PARAM_RE = re.compile(r"\s*xi\[(\d+),(\d+);(\d+)\]\s*\Z")


def parse_param(text: str) -> ParamId:
    """Parse a parameter name of the form ``xi[r,c;s]``."""
    m = _PARAM_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse parameter name: {text!r}")
    return ParamId(int(m.group(1)), int(m.group(2)), int(m.group(3)))


@dataclass(frozen=True)
class CertificateCheck:
    """Outcome of re-verifying one certificate; one line per check."""

    ok: bool
    lines: tuple[str, ...]

    def summary(self) -> str:
        return "\n".join(self.lines)


def _failed(lines: list[str], message: str) -> CertificateCheck:
    lines.append(f"FAIL {message}")
    return CertificateCheck(False, tuple(lines))


def verify_certificate(doc: dict, *, max_reductions: int = 20000) -> CertificateCheck:
    """Re-check a serialized certificate document from scratch.

    Returns a CertificateCheck whose lines narrate each verification step.
    Never raises on bad input; malformed documents fail with a message.
    """
    lines: list[str] = []
    if not isinstance(doc, dict):
        return _failed(lines, f"expected a JSON object, got {type(doc).__name__}")
    if doc.get("schema") != CERTIFICATE_SCHEMA:
        return _failed(lines, f"unknown schema {doc.get('schema')!r}")
    kind = doc.get("kind")
    if kind not in CERTIFICATE_KINDS:
        return _failed(lines, f"unknown certificate kind {kind!r}")

    try:
        constraints = [parse_poly(text) for text in doc["constraints"]]
    except (KeyError, TypeError, ValueError) as exc:
        return _failed(lines, f"cannot parse constraint system: {exc}")
    lines.append(f"ok   parsed {len(constraints)} constraints")

    if kind == "witness":
        return _verify_witness(doc, constraints, lines)
    return _verify_infeasible(doc, constraints, lines, max_reductions)


def _verify_witness(
    doc: dict, constraints: list[Poly], lines: list[str]
) -> CertificateCheck:
    try:
        assignment = {
            parse_param(name): Fraction(value)
            for name, value in doc["assignment"].items()
        }
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        return _failed(lines, f"cannot parse assignment: {exc}")
    lines.append(f"ok   parsed assignment of {len(assignment)} parameters")

    for i, constraint in enumerate(constraints):
        missing = sorted(constraint.params() - set(assignment))
        if missing:
            return _failed(
                lines,
                f"constraint {i} uses unassigned parameters "
                + ", ".join(map(str, missing)),
            )
        value = poly_eval(constraint, assignment)
        if value != 0:
            return _failed(lines, f"constraint {i} evaluates to {value}, not 0")
    lines.append("ok   every constraint vanishes at the assignment")
    return CertificateCheck(True, tuple(lines))


def _verify_infeasible(
    doc: dict, constraints: list[Poly], lines: list[str], max_reductions: int
) -> CertificateCheck:
    try:
        basis_polys = [parse_poly(text) for text in doc["basis"]]
    except (KeyError, TypeError, ValueError) as exc:
        return _failed(lines, f"cannot parse basis: {exc}")
    if not any(p.is_constant() and not p.is_zero() for p in basis_polys):
        return _failed(lines, "stored basis contains no nonzero constant")
    lines.append("ok   stored basis contains a nonzero constant")

    variables = sorted({v for p in basis_polys for v in p.params()})
    stored = GroebnerBasis(basis_polys, variables)
    if not stored.reduce(Poly.const(1)).is_zero():
        return _failed(lines, "stored basis does not reduce 1 to 0")
    lines.append("ok   stored basis reduces 1 to 0")

    try:
        recomputed = groebner_basis(constraints, max_reductions=max_reductions)
    except SolverIncomplete:
        return _failed(lines, "recomputation hit the Groebner reduction cap")
    if not recomputed.contains_one():
        return _failed(lines, "recomputed basis does not contain 1")
    if recomputed != stored:
        return _failed(lines, "recomputed basis differs from the stored one")
    lines.append("ok   recomputed Groebner basis contains 1 and matches")
    return CertificateCheck(True, tuple(lines))
