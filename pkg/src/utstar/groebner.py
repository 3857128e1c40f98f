"""Groebner bases over the rationals, graded reverse-lexicographic order.

Variables are ParamIds, ordered ascending by (row, col, slot) — the largest
ParamId is the largest variable.  Monomials are compared graded
reverse-lexicographically: higher total degree wins, and ties go to the
monomial with the smaller exponent at the smallest variable where the two
differ.

`groebner_basis` runs Buchberger's algorithm with the coprime-leading-monomial
criterion and interreduces the result, so the returned basis is the reduced
monic one — a canonical object for the ideal.  The computation is capped; if
the cap is hit a SolverIncomplete is raised rather than returning something
unfinished.

The certificates emitted elsewhere rely on one fact proved by these bases:
an ideal contains 1 iff its reduced basis is exactly {1}.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .poly import Monomial, ParamId, Poly, monomial_degree

DEFAULT_MAX_REDUCTIONS = 20_000


class SolverIncomplete(RuntimeError):
    """The Buchberger loop hit its resource cap: result would be unreliable."""


class _Order:
    """grevlex key for monomials over a fixed variable list."""

    def __init__(self, variables: Sequence[ParamId]):
        self.variables = tuple(variables)
        self._index = {v: i for i, v in enumerate(self.variables)}

    def key(self, mono: Monomial):
        vec = [0] * len(self.variables)
        for p, e in mono:
            vec[self._index[p]] = e
        # Ties in degree go to the monomial with the *smaller* exponent at the
        # smallest variable where they differ (reverse-lex tiebreak).
        return (monomial_degree(mono), tuple(-x for x in vec))


def _leading(p: Poly, order: _Order) -> tuple[Monomial, Fraction]:
    lt = max(p.terms, key=order.key)
    return lt, p.terms[lt]


def _divides(a: Monomial, b: Monomial) -> bool:
    exps = dict(b)
    return all(exps.get(p, 0) >= e for p, e in a)


def _quotient(b: Monomial, a: Monomial) -> Monomial:
    exps = dict(b)
    for p, e in a:
        exps[p] -= e
    return tuple(sorted((p, e) for p, e in exps.items() if e))


def _mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    exps = dict(a)
    for p, e in b:
        exps[p] = max(exps.get(p, 0), e)
    return tuple(sorted(exps.items()))


def _coprime(a: Monomial, b: Monomial) -> bool:
    vars_a = {p for p, _ in a}
    return all(p not in vars_a for p, _ in b)


def _mono_poly(mono: Monomial, coeff: Fraction) -> Poly:
    return Poly({mono: coeff})


def _normal_form(p: Poly, basis: Sequence[Poly], order: _Order) -> Poly:
    """Full normal form: no term of the result is divisible by any LM."""
    leads = [(_leading(g, order), g) for g in basis if not g.is_zero()]
    remainder = Poly.zero()
    work = p
    while not work.is_zero():
        mono, coeff = _leading(work, order)
        for (lm, lc), g in leads:
            if _divides(lm, mono):
                factor = _mono_poly(_quotient(mono, lm), coeff / lc)
                work = work - factor * g
                break
        else:
            remainder = remainder + _mono_poly(mono, coeff)
            work = work - _mono_poly(mono, coeff)
    return remainder


def _s_poly(f: Poly, g: Poly, order: _Order) -> Poly:
    (lmf, lcf) = _leading(f, order)
    (lmg, lcg) = _leading(g, order)
    l = _mono_lcm(lmf, lmg)
    return _mono_poly(_quotient(l, lmf), 1 / lcf) * f - _mono_poly(
        _quotient(l, lmg), 1 / lcg
    ) * g


class GroebnerBasis:
    """A reduced monic grevlex Groebner basis."""

    def __init__(self, polys: Sequence[Poly], variables: Sequence[ParamId]):
        self.polys = tuple(polys)
        self.variables = tuple(variables)
        self._order = _Order(self.variables)

    def __iter__(self):
        return iter(self.polys)

    def __len__(self) -> int:
        return len(self.polys)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroebnerBasis) and set(self.polys) == set(other.polys)

    def __repr__(self) -> str:
        return "GroebnerBasis([" + ", ".join(str(p) for p in self.polys) + "])"

    def reduce(self, p: Poly) -> Poly:
        """Normal form of `p` modulo the ideal; zero iff p is a member."""
        order = _Order(sorted(set(self.variables) | p.params()))
        return _normal_form(p, self.polys, order)

    def contains_one(self) -> bool:
        return any(p.is_constant() and not p.is_zero() for p in self.polys)


def groebner_basis(
    generators: Iterable[Poly], *, max_reductions: int = DEFAULT_MAX_REDUCTIONS
) -> GroebnerBasis:
    """Reduced monic grevlex Groebner basis of the given generators.

    Raises SolverIncomplete when more than `max_reductions` S-polynomial
    reductions would be needed.
    """
    gens = [g for g in generators if not g.is_zero()]
    variables: set[ParamId] = set()
    for g in gens:
        variables.update(g.params())
    order = _Order(sorted(variables))
    if not gens:
        return GroebnerBasis([], order.variables)

    basis: list[Poly] = []
    for g in gens:
        r = _normal_form(g, basis, order)
        if not r.is_zero():
            basis.append(r)
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    steps = 0
    while pairs:
        i, j = pairs.pop(0)
        lmi, _ = _leading(basis[i], order)
        lmj, _ = _leading(basis[j], order)
        if _coprime(lmi, lmj):
            continue
        steps += 1
        if steps > max_reductions:
            raise SolverIncomplete(
                f"solver incomplete: more than {max_reductions} S-pair reductions"
            )
        s = _normal_form(_s_poly(basis[i], basis[j], order), basis, order)
        if s.is_zero():
            continue
        basis.append(s)
        pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))

    # minimalize: drop anything whose LM another LM divides
    keep: list[Poly] = []
    leads = [_leading(g, order)[0] for g in basis]
    for idx, g in enumerate(basis):
        lm = leads[idx]
        redundant = any(
            k != idx
            and _divides(leads[k], lm)
            and (leads[k] != lm or k < idx)
            for k in range(len(basis))
        )
        if not redundant:
            keep.append(g)

    # interreduce and normalize to monic
    reduced: list[Poly] = []
    for idx, g in enumerate(keep):
        others = keep[:idx] + keep[idx + 1 :]
        r = _normal_form(g, others, order)
        if not r.is_zero():
            _, lc = _leading(r, order)
            reduced.append(r.scale(1 / lc))
    reduced.sort(key=lambda p: order.key(_leading(p, order)[0]))
    return GroebnerBasis(reduced, order.variables)


def ideal_contains_one(
    generators: Iterable[Poly], *, max_reductions: int = DEFAULT_MAX_REDUCTIONS
) -> bool:
    """True iff the ideal generated by `generators` is the whole ring."""
    return groebner_basis(list(generators), max_reductions=max_reductions).contains_one()
