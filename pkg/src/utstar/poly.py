"""Sparse multivariate polynomials over the rationals, with named parameters.

A parameter ("xi") is identified by a matrix position and a substitution slot:
``ParamId(row, col, slot)`` stands for the coefficient attached to the basis
element led by entry (row, col) in the generic element substituted at `slot`.
Parameters compare lexicographically by (row, col, slot); that order is the
variable order used everywhere (printing, Groebner bases).

A monomial is a sorted tuple of (ParamId, exponent) pairs with positive
exponents; the empty tuple is the constant monomial.  A polynomial maps
monomials to nonzero Fraction coefficients — the zero polynomial is the one
with no terms.  All arithmetic is exact.

Text form, used by serialized certificates and reports::

    3/2*xi[1,1;1]*xi[1,3;2]^2 - xi[2,2;1] + 4

``xi[r,c;s]`` is the parameter ParamId(r, c, s).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple


class ParamId(NamedTuple):
    """A commuting parameter: matrix position (row, col) and substitution slot."""

    row: int
    col: int
    slot: int

    def __str__(self) -> str:
        return f"xi[{self.row},{self.col};{self.slot}]"


# Monomial: sorted ((ParamId, exponent), ...) with exponents >= 1.
Monomial = tuple[tuple[ParamId, int], ...]

ONE_MONOMIAL: Monomial = ()


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps: dict[ParamId, int] = dict(a)
    for p, e in b:
        exps[p] = exps.get(p, 0) + e
    return tuple(sorted(exps.items()))


def monomial_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class Poly:
    """Immutable sparse polynomial; `terms` maps Monomial -> nonzero Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff != 0:
                    clean[mono] = Fraction(coeff)
        self.terms: dict[Monomial, Fraction] = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def const(cls, value: int | Fraction) -> "Poly":
        value = Fraction(value)
        return cls({ONE_MONOMIAL: value}) if value else cls()

    @classmethod
    def variable(cls, param: ParamId) -> "Poly":
        return cls({((param, 1),): Fraction(1)})

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONOMIAL in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        return self.terms.get(ONE_MONOMIAL, Fraction(0))

    def params(self) -> set[ParamId]:
        out: set[ParamId] = set()
        for mono in self.terms:
            out.update(p for p, _ in mono)
        return out

    def total_degree(self) -> int:
        return max((monomial_degree(m) for m in self.terms), default=0)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            s = out.get(mono, Fraction(0)) + coeff
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        res = Poly.__new__(Poly)
        res.terms = out
        return res

    def __neg__(self) -> "Poly":
        res = Poly.__new__(Poly)
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.terms or not other.terms:
            return Poly()
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = monomial_mul(ma, mb)
                s = out.get(mono, Fraction(0)) + ca * cb
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        res = Poly.__new__(Poly)
        res.terms = out
        return res

    def scale(self, value: int | Fraction) -> "Poly":
        value = Fraction(value)
        if not value:
            return Poly()
        res = Poly.__new__(Poly)
        res.terms = {m: c * value for m, c in self.terms.items()}
        return res

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # -- output ----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in a stable order: degree descending, then monomial tuple."""
        return sorted(
            self.terms.items(),
            key=lambda item: (-monomial_degree(item[0]), item[0]),
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks: list[str] = []
        for mono, coeff in self.sorted_terms():
            factors = [
                str(p) if e == 1 else f"{p}^{e}" for p, e in mono
            ]
            if not factors:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(coeff))] + factors)
            sign = "-" if coeff < 0 else "+"
            if not chunks:
                chunks.append(body if sign == "+" else "-" + body)
            else:
                chunks.append(f" {sign} {body}")
        return "".join(chunks)

    def __repr__(self) -> str:
        return f"Poly({self})"


def poly_sum(polys: Iterable[Poly]) -> Poly:
    total = Poly()
    for p in polys:
        total = total + p
    return total


def poly_mul(a: Poly, b: Poly) -> Poly:
    """Product of two polynomials (exact)."""
    return a * b


def poly_eval(p: Poly, assignment: Mapping[ParamId, Fraction | int]) -> Fraction:
    """Evaluate `p` at a rational point.

    Every parameter occurring in `p` must be assigned; a missing one raises
    KeyError naming the parameter.
    """
    total = Fraction(0)
    for mono, coeff in p.terms.items():
        term = coeff
        for param, exp in mono:
            if param not in assignment:
                raise KeyError(f"no value assigned to parameter {param}")
            term *= Fraction(assignment[param]) ** exp
        total += term
    return total


# -- text round-trip ------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<param>xi\[(?P<row>\d+),(?P<col>\d+);(?P<slot>\d+)\])"
    r"|(?P<number>\d+(?:/\d+)?)"
    r"|(?P<op>[-+*^()])"
    r")"
)


def parse_poly(text: str) -> Poly:
    """Parse the textual form produced by ``str(poly)``.

    Supported syntax: rational coefficients (``3``, ``3/2``), parameters
    ``xi[r,c;s]``, ``*`` products, ``^`` integer powers, ``+``/``-`` term
    joins, and a leading sign.  No parentheses (the printer never emits any).
    """
    tokens: list[tuple[str, object]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ValueError(f"cannot parse polynomial text at: {text[pos:]!r}")
            break
        if m.group("param"):
            tokens.append(
                ("param", ParamId(int(m.group("row")), int(m.group("col")), int(m.group("slot"))))
            )
        elif m.group("number"):
            tokens.append(("number", Fraction(m.group("number"))))
        else:
            tokens.append(("op", m.group("op")))
        pos = m.end()

    result = Poly()
    i = 0
    n = len(tokens)
    while i < n:
        sign = Fraction(1)
        saw_sign = False
        while i < n and tokens[i][0] == "op" and tokens[i][1] in "+-":
            if tokens[i][1] == "-":
                sign = -sign
            saw_sign = True
            i += 1
        if i >= n:
            if saw_sign:
                raise ValueError(f"dangling sign in polynomial text: {text!r}")
            break
        coeff = sign
        exps: dict[ParamId, int] = {}
        saw_factor = False
        while i < n:
            kind, val = tokens[i]
            if kind == "number":
                coeff *= val  # type: ignore[operator]
                i += 1
            elif kind == "param":
                param = val
                exp = 1
                i += 1
                if i + 1 < n and tokens[i] == ("op", "^") and tokens[i + 1][0] == "number":
                    frac = tokens[i + 1][1]
                    if frac.denominator != 1:  # type: ignore[union-attr]
                        raise ValueError("fractional exponent in polynomial text")
                    exp = int(frac)  # type: ignore[arg-type]
                    i += 2
                exps[param] = exps.get(param, 0) + exp  # type: ignore[index]
            elif kind == "op" and val == "*":
                i += 1
            else:
                break
            saw_factor = True
        if not saw_factor:
            raise ValueError(f"empty term in polynomial text: {text!r}")
        mono: Monomial = tuple(sorted(exps.items()))
        result = result + Poly({mono: coeff})
    return result


def iter_params(polys: Iterable[Poly]) -> Iterator[ParamId]:
    seen: set[ParamId] = set()
    for p in polys:
        for param in p.params():
            if param not in seen:
                seen.add(param)
                yield param
