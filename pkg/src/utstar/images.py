"""Images of multilinear *-polynomials: sampling, membership, closure.

The image of a multilinear polynomial f on one of these algebras is the set
of values f takes as each variable ranges over its own component (even/odd,
symmetric/skew).  That set is always closed under scalars but not
necessarily under sums, and this module answers three questions about it:
which matrices does it contain, is it a vector space, and — on the 3 x 3
algebra with grading 010 and the super-reflection star — exactly which
subspace or line is it.

Membership comes in two strengths:

* `membership_search` exploits multilinearity: freezing all variables but
  one makes f linear in the remaining variable's component coordinates, so
  every frozen tuple yields an exactly-solvable linear system.  Misses are
  inconclusive.
* `membership_decide` (two-variable polynomials) parametrizes both
  variables by generic component elements and turns "the target is a value"
  into a bilinear polynomial system; a Groebner basis containing 1 is an
  exact proof of non-membership.  Either outcome ships as a re-checkable
  `Certificate`.

`vector_space_probe` combines the two into a closure verdict with explicit
evidence; `counterexample_utn` packages the non-closure construction that
works on every algebra of size n >= 4 with grading 0101... and the
super-reflection star; `classify_image_ut3` / `classify_image_ut3_odd`
compute the exact image subspace on the 3 x 3 algebra; and
`verify_structure_lemmas` re-proves the closed product forms that the
classification rests on, by exact polynomial identity.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .algebra import (
    ComponentTag,
    StarAlgebraSpec,
    build_algebra,
    generic_element,
    leading_position,
    random_element,
)
from .certificates import CERTIFICATE_SCHEMA, parse_param, verify_certificate
from .freepoly import StarPoly, VarSymbol, parse_star_poly, substitute
from .groebner import SolverIncomplete, groebner_basis
from .identities import canonical_coefficients, generic_evaluation, slot_assignment
from .linalg import linear_solve
from .matrices import Mat, Position, format_mat, mat_sum, parse_mat_expr
from .poly import ParamId, Poly, parse_poly, poly_eval

DEFAULT_SEED = 20_250_101
DEFAULT_TRIALS = 200

IMAGE_REPORT_SCHEMA = "image-report/1"
DECISION_SCHEMA = "membership-decision/1"
LEMMA_REPORT_SCHEMA = "structure-lemmas/1"

# Caps keeping the exhaustive phases of the probe small and deterministic.
_BASIS_COMBO_CAP = 1000
_PAIR_DECIDE_CAP = 40
_RE_ENTRY_DRAWS = 12


# ---------------------------------------------------------------------------
# shared helpers


def _letters(f: StarPoly) -> tuple[VarSymbol, ...]:
    """The sorted letter set of a concrete multilinear polynomial."""
    if f.is_zero():
        raise ValueError("the zero polynomial has image {0}; nothing to explore")
    letters = f.letter_set()
    for v in letters:
        if v.is_placeholder:
            raise ValueError(
                f"variable {v} is a schema placeholder; expand the schema first"
            )
    return letters


def _check_target(spec: StarAlgebraSpec, target: Mat) -> None:
    if target.n != spec.n:
        raise ValueError(f"target is {target.n} x {target.n}, algebra is {spec.n} x {spec.n}")
    target.constant_entries()  # raises if any entry is symbolic


def _mat_coordinates(m: Mat) -> dict[Position, Fraction]:
    return m.constant_entries()


def _span_basis(n: int, mats: Iterable[Mat]) -> list[Mat]:
    """Reduced-echelon basis of the span of constant matrices.

    Columns are the upper-triangle positions in (row, col) order; the basis
    is canonical for the span, independent of input order.
    """
    pivots: dict[Position, dict[Position, Fraction]] = {}
    for m in mats:
        work = dict(_mat_coordinates(m))
        while work:
            lead = min(work)
            pivot = pivots.get(lead)
            if pivot is None:
                inv = 1 / work[lead]
                row = {c: v * inv for c, v in work.items()}
                for other in pivots.values():
                    f = other.pop(lead, None)
                    if f:
                        for c, v in row.items():
                            if c == lead:
                                continue
                            s = other.get(c, Fraction(0)) - f * v
                            if s:
                                other[c] = s
                            else:
                                other.pop(c, None)
                pivots[lead] = row
                break
            f = work.pop(lead)
            for c, v in pivot.items():
                if c == lead:
                    continue
                s = work.get(c, Fraction(0)) - f * v
                if s:
                    work[c] = s
                else:
                    work.pop(c, None)
    return [Mat.from_scalars(n, row) for _, row in sorted(pivots.items())]


def _in_span(span: Sequence[Mat], m: Mat) -> bool:
    if m.is_zero():
        return True
    if not span:
        return False
    positions = sorted(set(m.support()).union(*(b.support() for b in span)))
    rows = [[b.entry(*p).constant_value() for b in span] for p in positions]
    rhs = [m.entry(*p).constant_value() for p in positions]
    return linear_solve(rows, rhs) is not None


def _mat_commutator(a: Mat, b: Mat) -> Mat:
    return a * b - b * a


def _witness_json(witness: Mapping[VarSymbol, Mat]) -> tuple[tuple[str, str], ...]:
    return tuple((str(v), format_mat(m)) for v, m in sorted(witness.items()))


# ---------------------------------------------------------------------------
# sampling


def sample_image(
    f: StarPoly,
    spec: StarAlgebraSpec,
    trials: int,
    seed: int = DEFAULT_SEED,
    bound: int = 5,
) -> list[Mat]:
    """`trials` values of f at independent random component tuples.

    Deterministic for a given seed; trials=0 gives the empty list.
    """
    letters = _letters(f)
    rng = random.Random(seed)
    samples = []
    for _ in range(trials):
        assignment = {v: random_element(spec, v.tag, rng, bound) for v in letters}
        samples.append(substitute(f, assignment, spec))
    return samples


# ---------------------------------------------------------------------------
# membership by linear search


def _solve_free_variable(
    f: StarPoly,
    spec: StarAlgebraSpec,
    fixed: Mapping[VarSymbol, Mat],
    free: VarSymbol,
    target: Mat,
) -> dict[VarSymbol, Mat] | None:
    """Solve f(fixed, free) = target for the free variable's coordinates."""
    basis = spec.component(free.tag)
    images = []
    for b in basis:
        assignment = dict(fixed)
        assignment[free] = b
        images.append(substitute(f, assignment, spec))
    positions = sorted(set(target.support()).union(*(m.support() for m in images)))
    if not positions:
        return None
    rows = [[m.entry(*p).constant_value() for m in images] for p in positions]
    rhs = [target.entry(*p).constant_value() for p in positions]
    solution = linear_solve(rows, rhs)
    if solution is None:
        return None
    witness = dict(fixed)
    witness[free] = mat_sum(spec.n, (b.scale(c) for b, c in zip(basis, solution)))
    if substitute(f, witness, spec) != target:
        raise RuntimeError("solved witness does not reproduce the target (bug)")
    return witness


def membership_search(
    f: StarPoly,
    spec: StarAlgebraSpec,
    target: Mat,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    bound: int = 5,
) -> dict[VarSymbol, Mat] | None:
    """Search for a preimage tuple with f(tuple) = target; None if not found.

    Phase one is deterministic: the last variable is left free and the
    others sweep single component-basis vectors (then the next variable is
    freed, and so on).  Phase two freezes the non-free variables at random
    component elements for `trials` rounds.  A hit is exact and verified; a
    miss proves nothing.
    """
    letters = _letters(f)
    _check_target(spec, target)
    if target.is_zero():
        return {v: Mat.zero(spec.n) for v in letters}
    combos = 1
    for v in letters:
        combos *= len(spec.component(v.tag))
    if combos <= _BASIS_COMBO_CAP:
        for free_at in reversed(range(len(letters))):
            free = letters[free_at]
            others = [v for v in letters if v != free]
            for combo in itertools.product(*(spec.component(v.tag) for v in others)):
                witness = _solve_free_variable(
                    f, spec, dict(zip(others, combo)), free, target
                )
                if witness is not None:
                    return witness
    rng = random.Random(seed)
    for trial in range(trials):
        free = letters[len(letters) - 1 - trial % len(letters)]
        fixed = {
            v: random_element(spec, v.tag, rng, bound) for v in letters if v != free
        }
        witness = _solve_free_variable(f, spec, fixed, free, target)
        if witness is not None:
            return witness
    return None


# ---------------------------------------------------------------------------
# certificates and exact decision


@dataclass(frozen=True)
class Certificate:
    """Frozen proof of membership ("witness") or non-membership ("infeasible").

    The constraint system states, in component coordinates of one generic
    element per variable, that the polynomial's value equals the target.  A
    witness is an exact solution; an infeasible certificate is a Groebner
    basis of the system containing 1.  `verify_certificate` re-checks either
    from the serialized form alone.
    """

    kind: str  # "witness" | "infeasible"
    n: int
    grading: str
    star_kind: str
    poly_text: str
    target_text: str
    constraints: tuple[Poly, ...]
    assignment: tuple[tuple[ParamId, Fraction], ...] = ()
    basis: tuple[Poly, ...] = ()

    def to_json(self) -> dict:
        doc: dict = {
            "schema": CERTIFICATE_SCHEMA,
            "kind": self.kind,
            "algebra": {"n": self.n, "grading": self.grading, "kind": self.star_kind},
            "polynomial": self.poly_text,
            "target": self.target_text,
            "constraints": [str(p) for p in self.constraints],
        }
        if self.kind == "witness":
            doc["assignment"] = {str(p): str(v) for p, v in self.assignment}
        else:
            doc["basis"] = [str(p) for p in self.basis]
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "Certificate":
        if doc.get("schema") != CERTIFICATE_SCHEMA:
            raise ValueError(f"unknown certificate schema: {doc.get('schema')!r}")
        kind = doc["kind"]
        if kind not in ("witness", "infeasible"):
            raise ValueError(f"unknown certificate kind: {kind!r}")
        algebra = doc["algebra"]
        assignment: tuple[tuple[ParamId, Fraction], ...] = ()
        basis: tuple[Poly, ...] = ()
        if kind == "witness":
            assignment = tuple(
                sorted(
                    (parse_param(name), Fraction(value))
                    for name, value in doc["assignment"].items()
                )
            )
        else:
            basis = tuple(parse_poly(text) for text in doc["basis"])
        return cls(
            kind,
            algebra["n"],
            algebra["grading"],
            algebra["kind"],
            doc["polynomial"],
            doc["target"],
            tuple(parse_poly(text) for text in doc["constraints"]),
            assignment,
            basis,
        )


def membership_constraints(
    f: StarPoly, spec: StarAlgebraSpec, target: Mat
) -> tuple[Poly, ...]:
    """The polynomial system "f at generic elements equals target".

    One generic component element per variable (slots numbered in sorted
    variable order), one constraint per upper-triangle position where either
    side can be nonzero, positions in (row, col) order.  The construction is
    deterministic, so certificates can be re-derived bit-exactly.
    """
    _letters(f)
    _check_target(spec, target)
    assignment = {
        v: generic_element(spec, v.tag, slot)
        for v, slot in slot_assignment(f).items()
    }
    value = substitute(f, assignment, spec)
    positions = sorted(set(value.support()) | set(target.support()))
    system = [value.entry(*p) - target.entry(*p) for p in positions]
    return tuple(p for p in system if not p.is_zero())


def _certificate_context(
    f: StarPoly, spec: StarAlgebraSpec, target: Mat
) -> tuple[str, str, str]:
    return (
        "".join(map(str, spec.grading)),
        str(f),
        format_mat(target),
    )


def _witness_certificate(
    f: StarPoly,
    spec: StarAlgebraSpec,
    target: Mat,
    constraints: tuple[Poly, ...],
    witness: Mapping[VarSymbol, Mat],
) -> Certificate:
    """Express a matrix witness in component coordinates and certify it."""
    assignment: dict[ParamId, Fraction] = {}
    for v, slot in slot_assignment(f).items():
        m = witness[v]
        rebuilt = Mat.zero(spec.n)
        for b in spec.component(v.tag):
            r, c = leading_position(b)
            coeff = m.entry(r, c).constant_value()
            assignment[ParamId(r, c, slot)] = coeff
            rebuilt = rebuilt + b.scale(coeff)
        if rebuilt != m:
            raise RuntimeError(f"witness for {v} is not in component {v.tag.label}")
    for constraint in constraints:
        if poly_eval(constraint, assignment) != 0:
            raise RuntimeError("witness does not satisfy the constraint system (bug)")
    grading, poly_text, target_text = _certificate_context(f, spec, target)
    return Certificate(
        "witness",
        spec.n,
        grading,
        spec.kind,
        poly_text,
        target_text,
        constraints,
        tuple(sorted(assignment.items())),
    )


@dataclass(frozen=True)
class MembershipDecision:
    """Exact in/out verdict for one target matrix, or an honest unknown."""

    status: str  # "in" | "out" | "unknown"
    poly_text: str
    spec_id: str
    target_text: str
    witness: tuple[tuple[str, str], ...] = ()
    certificate: Certificate | None = None
    detail: str = ""

    def to_json(self) -> dict:
        doc: dict = {
            "schema": DECISION_SCHEMA,
            "status": self.status,
            "polynomial": self.poly_text,
            "algebra": self.spec_id,
            "target": self.target_text,
            "detail": self.detail,
        }
        if self.witness:
            doc["witness"] = {name: m for name, m in self.witness}
        if self.certificate is not None:
            doc["certificate"] = self.certificate.to_json()
        return doc


def _decide(
    f: StarPoly,
    spec: StarAlgebraSpec,
    target: Mat,
    trials: int,
    seed: int,
    max_reductions: int,
) -> MembershipDecision:
    """Decision core, any arity: search for IN, Groebner for OUT."""
    grading, poly_text, target_text = _certificate_context(f, spec, target)
    constraints = membership_constraints(f, spec, target)
    witness = membership_search(f, spec, target, trials, seed)
    if witness is not None:
        certificate = _witness_certificate(f, spec, target, constraints, witness)
        return MembershipDecision(
            "in", poly_text, spec.id, target_text, _witness_json(witness), certificate
        )
    try:
        basis = groebner_basis(constraints, max_reductions=max_reductions)
    except SolverIncomplete:
        return MembershipDecision(
            "unknown",
            poly_text,
            spec.id,
            target_text,
            detail="Groebner reduction cap reached before the system was decided",
        )
    if basis.contains_one():
        certificate = Certificate(
            "infeasible",
            spec.n,
            grading,
            spec.kind,
            poly_text,
            target_text,
            constraints,
            basis=tuple(basis),
        )
        return MembershipDecision(
            "out", poly_text, spec.id, target_text, certificate=certificate
        )
    return MembershipDecision(
        "unknown",
        poly_text,
        spec.id,
        target_text,
        detail="constraints are consistent over an extension field "
        "but no rational witness was found",
    )


def membership_decide(
    f: StarPoly,
    spec: StarAlgebraSpec,
    target: Mat,
    *,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    max_reductions: int = 20000,
) -> MembershipDecision:
    """Decide whether `target` is a value of a two-variable polynomial.

    IN comes with a coordinate witness, OUT with a Groebner basis containing
    1; both are packaged as re-checkable certificates.  A Groebner resource
    cap yields "unknown".  Polynomials in more than two variables are
    rejected (their constraint systems are no longer bilinear and rarely
    terminate): use membership_search for one-sided evidence.
    """
    letters = _letters(f)
    if len(letters) != 2:
        raise ValueError(
            f"membership_decide handles exactly two variables, got {len(letters)}; "
            "use membership_search for other arities"
        )
    _check_target(spec, target)
    return _decide(f, spec, target, trials, seed, max_reductions)


# ---------------------------------------------------------------------------
# vector-space probing


@dataclass(frozen=True)
class ImageReport:
    """Closure verdict for the image of one polynomial on one algebra."""

    poly_text: str
    spec_id: str
    verdict: str  # "vector-space" | "not-vector-space" | "unknown"
    evidence: str  # "certified" | "sampled" | "none"
    trials: int
    seed: int
    samples: int
    basis: tuple[str, ...] = ()
    pair: tuple[str, str] | None = None
    pair_witnesses: tuple[tuple[tuple[str, str], ...], ...] = ()
    certificate: Certificate | None = None
    detail: str = ""

    def to_json(self) -> dict:
        doc: dict = {
            "schema": IMAGE_REPORT_SCHEMA,
            "polynomial": self.poly_text,
            "algebra": self.spec_id,
            "verdict": self.verdict,
            "evidence": self.evidence,
            "trials": self.trials,
            "seed": self.seed,
            "samples": self.samples,
            "detail": self.detail,
        }
        if self.basis:
            doc["basis"] = list(self.basis)
        if self.pair is not None:
            doc["pair"] = list(self.pair)
            doc["pair_witnesses"] = [
                {name: m for name, m in witness} for witness in self.pair_witnesses
            ]
        if self.certificate is not None:
            doc["certificate"] = self.certificate.to_json()
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "ImageReport":
        if doc.get("schema") != IMAGE_REPORT_SCHEMA:
            raise ValueError(f"unknown image report schema: {doc.get('schema')!r}")
        pair = tuple(doc["pair"]) if "pair" in doc else None
        witnesses: tuple[tuple[tuple[str, str], ...], ...] = ()
        if "pair_witnesses" in doc:
            witnesses = tuple(
                tuple(sorted(w.items())) for w in doc["pair_witnesses"]
            )
        certificate = (
            Certificate.from_json(doc["certificate"]) if "certificate" in doc else None
        )
        return cls(
            doc["polynomial"],
            doc["algebra"],
            doc["verdict"],
            doc["evidence"],
            doc["trials"],
            doc["seed"],
            doc["samples"],
            tuple(doc.get("basis", ())),
            pair,  # type: ignore[arg-type]
            witnesses,
            certificate,
            doc.get("detail", ""),
        )


def _normalized_candidate(
    value: Mat, assignment: Mapping[VarSymbol, Mat], letters: Sequence[VarSymbol]
) -> tuple[Mat, dict[VarSymbol, Mat]]:
    """Rescale a nonzero image value so its leading entry is 1.

    The image is closed under scalars — dividing one variable's matrix by
    the leading coefficient keeps the tuple a preimage — so candidates can
    be de-duplicated up to scale, which keeps the pair scan canonical.
    """
    lead = value.entry(*min(value.support())).constant_value()
    if lead == 1:
        return value, dict(assignment)
    scaled = dict(assignment)
    scaled[letters[0]] = assignment[letters[0]].scale(1 / lead)
    return value.scale(1 / lead), scaled


def _not_vector_space_report(
    f: StarPoly,
    spec: StarAlgebraSpec,
    trials: int,
    seed: int,
    samples: int,
    v1: Mat,
    w1: Mapping[VarSymbol, Mat],
    v2: Mat,
    w2: Mapping[VarSymbol, Mat],
    certificate: Certificate,
    detail: str,
) -> ImageReport:
    for value, witness in ((v1, w1), (v2, w2)):
        if substitute(f, witness, spec) != value:
            raise RuntimeError("pair witness does not reproduce its value (bug)")
    check = verify_certificate(certificate.to_json())
    if not check.ok:
        raise RuntimeError(f"certificate failed re-verification (bug): {check.summary()}")
    return ImageReport(
        str(f),
        spec.id,
        "not-vector-space",
        "certified",
        trials,
        seed,
        samples,
        pair=(format_mat(v1), format_mat(v2)),
        pair_witnesses=(_witness_json(w1), _witness_json(w2)),
        certificate=certificate,
        detail=detail,
    )


def vector_space_probe(
    f: StarPoly,
    spec: StarAlgebraSpec,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    bound: int = 5,
) -> ImageReport:
    """Probe whether the image of f is closed under addition.

    Candidate values come from all component-basis tuples and from `trials`
    random samples, normalized to leading coefficient 1.  For two-variable
    polynomials every candidate pair sum is decided exactly; the first sum
    proved OUT gives a certified not-vector-space verdict.  Otherwise the
    sampled span is computed and random elements of it are searched back
    into the image: full re-entry is reported as a vector-space verdict on
    sampled evidence, anything less as unknown.  Only the negative verdict
    is ever a proof.
    """
    letters = _letters(f)
    poly_text = str(f)
    if generic_evaluation(f, spec).is_zero():
        return ImageReport(
            poly_text,
            spec.id,
            "vector-space",
            "certified",
            trials,
            seed,
            0,
            detail="f vanishes identically; the image is the zero subspace",
        )
    rng = random.Random(seed)

    candidates: dict[Mat, dict[VarSymbol, Mat]] = {}

    def consider(value: Mat, assignment: Mapping[VarSymbol, Mat]) -> None:
        if value.is_zero():
            return
        value, witness = _normalized_candidate(value, assignment, letters)
        candidates.setdefault(value, witness)

    combos = 1
    for v in letters:
        combos *= len(spec.component(v.tag))
    if combos <= _BASIS_COMBO_CAP:
        for combo in itertools.product(*(spec.component(v.tag) for v in letters)):
            assignment = dict(zip(letters, combo))
            consider(substitute(f, assignment, spec), assignment)
    sample_count = 0
    for _ in range(trials):
        assignment = {v: random_element(spec, v.tag, rng, bound) for v in letters}
        consider(substitute(f, assignment, spec), assignment)
        sample_count += 1

    ordered = sorted(
        candidates,
        key=lambda m: (len(m.support()), sorted(m.support()), format_mat(m)),
    )

    saw_unknown = False
    if len(letters) == 2:
        decisions = 0
        for i, j in itertools.combinations(range(len(ordered)), 2):
            if decisions >= _PAIR_DECIDE_CAP:
                break
            total = ordered[i] + ordered[j]
            if total.is_zero() or total in candidates:
                continue
            decisions += 1
            decision = _decide(f, spec, total, trials, seed, 20000)
            if decision.status == "out":
                assert decision.certificate is not None
                return _not_vector_space_report(
                    f,
                    spec,
                    trials,
                    seed,
                    sample_count,
                    ordered[i],
                    candidates[ordered[i]],
                    ordered[j],
                    candidates[ordered[j]],
                    decision.certificate,
                    f"sum of the pair proved outside the image "
                    f"after {decisions} exact decisions",
                )
            if decision.status == "unknown":
                saw_unknown = True

    span = _span_basis(spec.n, ordered)
    for draw in range(_RE_ENTRY_DRAWS):
        combo = mat_sum(
            spec.n,
            (b.scale(Fraction(rng.randint(-bound, bound))) for b in span),
        )
        if combo.is_zero():
            continue
        if membership_search(f, spec, combo, trials, rng.randrange(2**30)) is None:
            return ImageReport(
                poly_text,
                spec.id,
                "unknown",
                "none",
                trials,
                seed,
                sample_count,
                detail=f"span element {format_mat(combo)} did not re-enter "
                "the image within the trial budget",
            )
    if saw_unknown:
        return ImageReport(
            poly_text,
            spec.id,
            "unknown",
            "none",
            trials,
            seed,
            sample_count,
            detail="some pair sums were undecided, and no certified "
            "counterexample was found",
        )
    return ImageReport(
        poly_text,
        spec.id,
        "vector-space",
        "sampled",
        trials,
        seed,
        sample_count,
        basis=tuple(format_mat(b) for b in span),
        detail=f"{_RE_ENTRY_DRAWS} random span elements re-entered the image",
    )


# ---------------------------------------------------------------------------
# the n >= 4 non-closure construction


def counterexample_utn(
    n: int, *, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED
) -> ImageReport:
    """Certified non-closure of the image of y1+ z1+ on the n x n algebra.

    Uses the alternating grading 0101... (final 0 repeated when n is odd)
    with the super-reflection star.  The single matrix units E(1,2) and
    E(2,3) are both values, but their sum provably is not: the bilinear
    constraint system has Groebner basis {1}.
    """
    if n < 4:
        raise ValueError(
            f"the non-closure construction needs n >= 4, got {n}: "
            "on smaller algebras every image of this form is a vector space"
        )
    grading = tuple(i % 2 for i in range(n))
    spec = build_algebra(n, grading, "super-reflection")
    f = parse_star_poly("y1+ z1+")
    e12 = Mat.unit(n, 1, 2)
    e23 = Mat.unit(n, 2, 3)
    w1 = membership_search(f, spec, e12, trials, seed)
    w2 = membership_search(f, spec, e23, trials, seed)
    if w1 is None or w2 is None:
        raise RuntimeError("expected single-unit witnesses were not found (bug)")
    decision = membership_decide(f, spec, e12 + e23, trials=32, seed=seed)
    if decision.status != "out" or decision.certificate is None:
        raise RuntimeError(
            f"expected an OUT decision for E(1,2)+E(2,3), got {decision.status}"
        )
    return _not_vector_space_report(
        f,
        spec,
        trials,
        seed,
        0,
        e12,
        w1,
        e23,
        w2,
        decision.certificate,
        "both units are values; their sum is certified outside the image",
    )


# ---------------------------------------------------------------------------
# the 3 x 3 classification


def _ut3_spec() -> StarAlgebraSpec:
    return build_algebra(3, (0, 1, 0), "super-reflection")


CLASS_ZERO = "zero"
CLASS_CORNER_LINE = "span_e13"
CLASS_EVEN_SYMMETRIC = "A0plus"
CLASS_EVEN_SKEW = "A0minus"
CLASS_MIRROR_LINE = "diag_mirror_line"
CLASS_MIRROR_PLUS_CORNER = "diag_mirror_plus_corner"
CLASS_ODD_PART = "A1"
CLASS_ODD_LINE = "line_in_A1"
CLASS_CORNER_LINE_TWO_ODD = "span_e13_two_odd"


@dataclass(frozen=True)
class Ut3ImageClass:
    """The exact image of a multilinear polynomial on the 3 x 3 algebra.

    `label` names the subspace; `basis` spans it.  For the two classes built
    around the mirrored diagonal a(E11 +/- E33), `k` records the number of
    skew variables (the mirror sign is (-1)^k).  For a line inside the odd
    part, `ratio` is the primitive (E12 : E23) coordinate pair of the line.
    """

    label: str
    basis: tuple[str, ...] = ()
    k: int | None = None
    ratio: tuple[int, int] | None = None

    def __str__(self) -> str:
        parts = [self.label]
        if self.k is not None:
            parts.append(f"k={self.k}")
        if self.ratio is not None:
            parts.append(f"ratio={self.ratio[0]}:{self.ratio[1]}")
        if self.basis:
            parts.append("span{" + ", ".join(self.basis) + "}")
        else:
            parts.append("{0}")
        return " ".join(parts)

    def to_json(self) -> dict:
        doc: dict = {
            "schema": "ut3-image-class/1",
            "label": self.label,
            "basis": list(self.basis),
        }
        if self.k is not None:
            doc["k"] = self.k
        if self.ratio is not None:
            doc["ratio"] = list(self.ratio)
        return doc


def _validate_image_class(
    f: StarPoly,
    spec: StarAlgebraSpec,
    basis_texts: Sequence[str],
    samples: int,
    trials: int,
    seed: int,
) -> None:
    """Cross-check a classification: samples stay inside, basis is hit."""
    span = [parse_mat_expr(text, spec.n) for text in basis_texts]
    for value in sample_image(f, spec, samples, seed):
        if not _in_span(span, value):
            raise RuntimeError(
                f"classification is contradicted by the sample {format_mat(value)}"
            )
    rng = random.Random(seed)
    for b in span:
        if membership_search(f, spec, b, trials, rng.randrange(2**30)) is None:
            raise RuntimeError(
                f"predicted basis vector {format_mat(b)} was not realized "
                "by any witness"
            )


def _primitive_ratio(a: Fraction, b: Fraction) -> tuple[int, int]:
    den = lcm(a.denominator, b.denominator)
    ai, bi = int(a * den), int(b * den)
    g = gcd(ai, bi)
    if g:
        ai, bi = ai // g, bi // g
    if ai < 0 or (ai == 0 and bi < 0):
        ai, bi = -ai, -bi
    return ai, bi


def classify_image_ut3(
    f: StarPoly,
    *,
    samples: int = 1000,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
) -> Ut3ImageClass:
    """Exact image of an even-variable multilinear polynomial on UT3(010).

    The algebra is fixed: grading 010 with the super-reflection star.  The
    polynomial is rewritten, modulo the algebra's identities, in the
    canonical basis "one straight product plus one bracket word per skew
    variable after the first"; the image is then read off the coefficients:

    * everything zero → the zero subspace; only bracket coefficients
      surviving → the corner line span{E13};
    * no skew variables → the full even symmetric component;
    * one skew variable → the full even skew component;
    * k >= 2 skew variables → the mirrored diagonal line
      a(E11 + (-1)^k E33), plus span{E13} unless all the derived corner
      coefficients vanish.

    The verdict is cross-validated against `samples` random evaluations
    (all must lie in the predicted subspace) and every predicted basis
    vector is recovered by membership_search.
    """
    spec = _ut3_spec()
    letters = _letters(f)
    if any(v.parity == 1 for v in letters):
        raise ValueError(
            "f has odd variables; classify_image_ut3 covers even variables "
            "only — use classify_image_ut3_odd"
        )
    sym = [v for v in letters if v.symmetry == "+"]
    skew = [v for v in letters if v.symmetry == "-"]
    k = len(skew)

    canonical = [StarPoly.from_word(letters)]
    prefix = StarPoly.from_word(tuple(sym)) if sym else None
    for lead in range(1, k):
        bracket = StarPoly.from_word((skew[lead],)) * StarPoly.from_word((skew[0],))
        bracket = bracket - StarPoly.from_word((skew[0],)) * StarPoly.from_word(
            (skew[lead],)
        )
        for t, v in enumerate(skew):
            if t in (0, lead):
                continue
            follower = StarPoly.from_word((v,))
            bracket = bracket * follower - follower * bracket
        canonical.append(prefix * bracket if prefix is not None else bracket)

    try:
        coefficients = canonical_coefficients(f, canonical, spec)
    except ValueError as exc:
        raise ValueError(
            f"f does not reduce to the canonical straight-product/bracket "
            f"basis on {spec.id}: {exc}"
        ) from None
    alpha = coefficients[0]
    bracket_coeffs = coefficients[1:]

    if alpha == 0:
        if all(c == 0 for c in bracket_coeffs):
            verdict = Ut3ImageClass(CLASS_ZERO)
        else:
            verdict = Ut3ImageClass(CLASS_CORNER_LINE, ("e13",))
    elif k == 0:
        basis = tuple(format_mat(b) for b in spec.component(ComponentTag(0, "+")))
        verdict = Ut3ImageClass(CLASS_EVEN_SYMMETRIC, basis)
    elif k == 1:
        basis = tuple(format_mat(b) for b in spec.component(ComponentTag(0, "-")))
        verdict = Ut3ImageClass(CLASS_EVEN_SKEW, basis)
    else:
        sign = (-1) ** k
        corner = [-sign * alpha + sum(bracket_coeffs) * 2 ** (k - 1) * sign]
        for t, coeff in enumerate(bracket_coeffs):
            corner.append((-1) ** (k + t + 2) * alpha - sign * 2 ** (k - 1) * coeff)
        mirror = "e11 + e33" if sign == 1 else "e11 - e33"
        if all(c == 0 for c in corner):
            verdict = Ut3ImageClass(CLASS_MIRROR_LINE, (mirror,), k=k)
        else:
            verdict = Ut3ImageClass(CLASS_MIRROR_PLUS_CORNER, (mirror, "e13"), k=k)

    _validate_image_class(f, spec, verdict.basis, samples, trials, seed)
    return verdict


def classify_image_ut3_odd(
    f: StarPoly,
    *,
    samples: int = 1000,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
) -> Ut3ImageClass:
    """Exact image of a multilinear polynomial with odd variables on UT3(010).

    Products of three or more odd elements vanish (the odd part cubes to
    zero), so at most two odd variables can contribute:

    * three or more odd variables → the zero subspace;
    * exactly two → the zero subspace or the corner line span{E13};
    * exactly one → a subspace of the odd part: zero, a line (reported with
      its primitive E12:E23 ratio), or the whole two-dimensional odd part.

    The image equals the span of the coefficient matrices of the symbolic
    generic evaluation, which is how the verdict is computed; it is then
    cross-validated like the even classifier.
    """
    spec = _ut3_spec()
    letters = _letters(f)
    odd_count = sum(1 for v in letters if v.parity == 1)
    if odd_count == 0:
        raise ValueError("f has no odd variables; use classify_image_ut3")

    value = generic_evaluation(f, spec)
    if odd_count >= 3:
        if not value.is_zero():
            raise RuntimeError("products of three odd elements must vanish (bug)")
        verdict = Ut3ImageClass(CLASS_ZERO)
    elif odd_count == 2:
        if not set(value.support()) <= {(1, 3)}:
            raise RuntimeError("two-odd-variable image must sit in the corner (bug)")
        if value.is_zero():
            verdict = Ut3ImageClass(CLASS_ZERO)
        else:
            verdict = Ut3ImageClass(CLASS_CORNER_LINE_TWO_ODD, ("e13",))
    else:
        if not set(value.support()) <= {(1, 2), (2, 3)}:
            raise RuntimeError("one-odd-variable image must sit in the odd part (bug)")
        coefficient_rows: dict[tuple, dict[Position, Fraction]] = {}
        for position, poly in value.entries.items():
            for monomial, coeff in poly.terms.items():
                coefficient_rows.setdefault(monomial, {})[position] = coeff
        span = _span_basis(
            spec.n,
            (Mat.from_scalars(spec.n, row) for row in coefficient_rows.values()),
        )
        if not span:
            verdict = Ut3ImageClass(CLASS_ZERO)
        elif len(span) == 2:
            verdict = Ut3ImageClass(
                CLASS_ODD_PART, tuple(format_mat(b) for b in span)
            )
        else:
            line = span[0]
            ratio = _primitive_ratio(
                line.entry(1, 2).constant_value(), line.entry(2, 3).constant_value()
            )
            verdict = Ut3ImageClass(
                CLASS_ODD_LINE, (format_mat(line),), ratio=ratio
            )

    _validate_image_class(f, spec, verdict.basis, samples, trials, seed)
    return verdict


# ---------------------------------------------------------------------------
# closed product forms on the 3 x 3 algebra


@dataclass(frozen=True)
class LemmaCheck:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class StructureLemmaReport:
    """Exact verification of the three closed product forms on UT3(010)."""

    l_max: int
    k_max: int
    checks: tuple[LemmaCheck, ...]

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def summary_lines(self) -> list[str]:
        lines = [
            f"closed product forms on ut3-010-super-reflection: "
            f"{sum(c.ok for c in self.checks)}/{len(self.checks)} confirmed "
            f"(symmetric length <= {self.l_max}, skew length <= {self.k_max})"
        ]
        for c in self.checks:
            status = "PASS" if c.ok else "FAIL"
            lines.append(f"{status} {c.name}" + (f": {c.detail}" if c.detail else ""))
        return lines

    def to_json(self) -> dict:
        return {
            "schema": LEMMA_REPORT_SCHEMA,
            "l_max": self.l_max,
            "k_max": self.k_max,
            "all_ok": self.all_ok,
            "checks": [
                {"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks
            ],
        }


def _xi(position: Position, slot: int) -> Poly:
    return Poly.variable(ParamId(position[0], position[1], slot))


def verify_structure_lemmas(l_max: int, k_max: int) -> StructureLemmaReport:
    """Confirm the closed forms of generic products on UT3(010), exactly.

    Three families, each checked by exact polynomial-matrix equality:

    * products of generic even symmetric elements are diagonal with equal
      corners: diag(prod xi11, prod xi22, prod xi11);
    * left-nested brackets of k >= 2 generic even skew elements collapse to
      a single corner term (-1)^k 2^(k-1) (xi11 xi13' - xi13 xi11') times
      the remaining diagonal coefficients, for every choice of lead factor;
    * straight products of k generic even skew elements have diagonal
      (prod xi11, 0, (-1)^k prod xi11) and an alternating-sum corner.
    """
    if l_max < 1 or k_max < 1:
        raise ValueError(f"bounds must be >= 1, got l_max={l_max}, k_max={k_max}")
    spec = _ut3_spec()
    sym_tag = ComponentTag(0, "+")
    skew_tag = ComponentTag(0, "-")
    checks: list[LemmaCheck] = []

    def record(name: str, actual: Mat, expected: Mat) -> None:
        ok = actual == expected
        detail = "" if ok else f"got {actual}, expected {expected}"
        checks.append(LemmaCheck(name, ok, detail))

    for l in range(1, l_max + 1):
        product = Mat.identity(spec.n)
        for slot in range(1, l + 1):
            product = product * generic_element(spec, sym_tag, slot)
        d11 = Poly.const(1)
        d22 = Poly.const(1)
        for slot in range(1, l + 1):
            d11 = d11 * _xi((1, 1), slot)
            d22 = d22 * _xi((2, 2), slot)
        record(
            f"symmetric-product-l{l}",
            product,
            Mat(spec.n, {(1, 1): d11, (2, 2): d22, (3, 3): d11}),
        )

    for k in range(1, k_max + 1):
        factors = [generic_element(spec, skew_tag, slot) for slot in range(1, k + 1)]
        product = Mat.identity(spec.n)
        for factor in factors:
            product = product * factor
        top = Poly.const(1)
        for slot in range(1, k + 1):
            top = top * _xi((1, 1), slot)
        corner = Poly.zero()
        for i in range(1, k + 1):
            term = Poly.const((-1) ** (k + i))
            for slot in range(1, k + 1):
                term = term * (_xi((1, 3), slot) if slot == i else _xi((1, 1), slot))
            corner = corner + term
        record(
            f"skew-product-k{k}",
            product,
            Mat(spec.n, {(1, 1): top, (1, 3): corner, (3, 3): top.scale((-1) ** k)}),
        )

    for k in range(2, k_max + 1):
        factors = [generic_element(spec, skew_tag, slot) for slot in range(1, k + 1)]
        for lead in range(2, k + 1):
            rest = [s for s in range(1, k + 1) if s not in (1, lead)]
            bracket = _mat_commutator(factors[lead - 1], factors[0])
            for s in rest:
                bracket = _mat_commutator(bracket, factors[s - 1])
            corner = (
                _xi((1, 1), lead) * _xi((1, 3), 1) - _xi((1, 3), lead) * _xi((1, 1), 1)
            ).scale(Fraction((-1) ** k * 2 ** (k - 1)))
            for s in rest:
                corner = corner * _xi((1, 1), s)
            record(
                f"skew-bracket-k{k}-lead{lead}",
                bracket,
                Mat(spec.n, {(1, 3): corner}),
            )

    return StructureLemmaReport(l_max, k_max, tuple(checks))
