"""Deciding *-identities by exact generic substitution.

Over the rationals (infinite field, characteristic 0) a polynomial vanishes
identically on the algebra iff it vanishes on generic elements whose
coefficients are independent commuting parameters.  So `is_identity`
substitutes one generic component element per variable and checks whether
every entry of the resulting matrix is the zero polynomial — a complete
decision procedure, not a sampling heuristic.

When the answer is "no", a rational witness is produced by specializing the
parameters at small random integers until the evaluated matrix is nonzero
(such a point exists and is found quickly by Schwartz–Zippel); the witness
ships as one concrete matrix per variable and re-evaluates exactly.

`canonical_coefficients` expresses a polynomial in a basis of polynomials
*modulo the identities of the algebra*: it solves for the unique combination
whose generic evaluation matches, which exists iff the polynomial lies in
the basis span modulo identities.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import StarAlgebraSpec, generic_element, random_element
from .freepoly import StarPoly, VarSymbol, substitute
from .linalg import RowReducer, linear_solve
from .matrices import Mat, Position, format_mat
from .poly import Monomial, ParamId, Poly, poly_eval

DEFAULT_WITNESS_SEED = 20_250_101


def slot_assignment(f: StarPoly) -> dict[VarSymbol, int]:
    """One distinct parameter slot per variable, in sorted variable order."""
    return {v: i + 1 for i, v in enumerate(sorted(f.variables()))}


def generic_assignment(
    f: StarPoly, spec: StarAlgebraSpec
) -> dict[VarSymbol, Mat]:
    return {
        v: generic_element(spec, v.tag, slot)
        for v, slot in slot_assignment(f).items()
    }


def generic_evaluation(f: StarPoly, spec: StarAlgebraSpec) -> Mat:
    """f evaluated at one generic element per variable; zero iff f is an identity."""
    return substitute(f, generic_assignment(f, spec), spec)


def evaluation_vector(m: Mat) -> dict[tuple[Position, Monomial], Fraction]:
    """Flatten a polynomial matrix into its coefficient vector."""
    out: dict[tuple[Position, Monomial], Fraction] = {}
    for pos, poly in m.entries.items():
        for mono, coeff in poly.terms.items():
            out[(pos, mono)] = coeff
    return out


@dataclass(frozen=True)
class IdentityVerdict:
    """Outcome of an identity check; a witness accompanies every refusal."""

    is_identity: bool
    witness: dict[VarSymbol, Mat] | None = None
    value: Mat | None = None

    def to_json(self) -> dict:
        doc: dict = {"schema": "identity-verdict/1", "is_identity": self.is_identity}
        if self.witness is not None:
            doc["witness"] = {str(v): format_mat(m) for v, m in sorted(self.witness.items())}
            doc["value"] = format_mat(self.value) if self.value is not None else None
        return doc


def _specialize(
    f: StarPoly,
    spec: StarAlgebraSpec,
    value: Mat,
    seed: int,
) -> tuple[dict[VarSymbol, Mat], Mat]:
    """Random integer point where the generic evaluation stays nonzero."""
    rng = random.Random(seed)
    params = sorted({p for poly in value.entries.values() for p in poly.params()})
    slots = slot_assignment(f)
    for attempt in range(1000):
        bound = 3 + attempt // 10
        point: dict[ParamId, Fraction] = {
            p: Fraction(rng.randint(-bound, bound)) for p in params
        }
        concrete = Mat(
            spec.n,
            {pos: Poly.const(poly_eval(poly, point)) for pos, poly in value.entries.items()},
        )
        if concrete.is_zero():
            continue
        witness: dict[VarSymbol, Mat] = {}
        for v, slot in slots.items():
            total = Mat.zero(spec.n)
            for b in spec.component(v.tag):
                r, c = min(b.support())
                total = total + b.scale(point.get(ParamId(r, c, slot), Fraction(0)))
            witness[v] = total
        return witness, concrete
    raise RuntimeError("could not specialize a nonzero evaluation (unexpected)")


def is_identity(
    f: StarPoly, spec: StarAlgebraSpec, *, seed: int = DEFAULT_WITNESS_SEED
) -> IdentityVerdict:
    """Exact identity check; non-identities come with a re-checkable witness."""
    if f.is_zero():
        raise ValueError("the zero polynomial is trivially an identity; pass a nonzero one")
    value = generic_evaluation(f, spec)
    if value.is_zero():
        return IdentityVerdict(True)
    witness, concrete = _specialize(f, spec, value, seed)
    return IdentityVerdict(False, witness, concrete)


def random_evaluation(
    f: StarPoly, spec: StarAlgebraSpec, seed: int, bound: int = 5
) -> Mat:
    """f at one random rational tuple (component-respecting); deterministic."""
    rng = random.Random(seed)
    assignment = {
        v: random_element(spec, v.tag, rng, bound) for v in sorted(f.variables())
    }
    return substitute(f, assignment, spec)


def canonical_coefficients(
    f: StarPoly,
    basis: Sequence[StarPoly],
    spec: StarAlgebraSpec,
) -> list[Fraction]:
    """Coefficients of f in `basis`, working modulo the algebra's identities.

    All polynomials must share one letter set.  Errors: dependent basis
    (modulo the identities); f outside the basis span.
    """
    if not basis:
        raise ValueError("empty basis")
    letters = f.letter_set()
    for i, b in enumerate(basis):
        if b.letter_set() != letters:
            raise ValueError(
                f"basis element {i} does not share the letter set of f "
                f"({' '.join(map(str, letters))})"
            )
    # one shared slot assignment so all evaluations live in one parameter space
    slots = {v: i + 1 for i, v in enumerate(letters)}
    assignment = {v: generic_element(spec, v.tag, slot) for v, slot in slots.items()}
    basis_vectors = [evaluation_vector(substitute(b, assignment, spec)) for b in basis]
    f_vector = evaluation_vector(substitute(f, assignment, spec))

    reducer = RowReducer()
    independent = sum(reducer.add(vec) for vec in basis_vectors)
    if independent < len(basis):
        raise ValueError("basis is linearly dependent modulo the identities of the algebra")

    columns = sorted(set(f_vector) | {c for vec in basis_vectors for c in vec})
    rows = [[vec.get(col, Fraction(0)) for vec in basis_vectors] for col in columns]
    rhs = [f_vector.get(col, Fraction(0)) for col in columns]
    solution = linear_solve(rows, rhs)
    if solution is None:
        raise ValueError("polynomial is outside the span of the basis modulo identities")
    return solution
