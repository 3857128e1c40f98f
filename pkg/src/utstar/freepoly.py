"""The free *-algebra: signed graded variables, words, and their combinations.

Variables come in four kinds matching the algebra components: y (even) or
z (odd) species, with a + (symmetric) or - (skew) star symmetry, plus a
positive index — printed like ``y1+``, ``z3-``.  A word is a sequence of
variables; a StarPoly is a finite rational combination of words with the
concatenation product.

Text grammar (whitespace insignificant)::

    poly   := term (('+'|'-') term)*
    term   := coeff? factor+
    factor := var | '[' var (',' var)+ ']'
    var    := ('y'|'z'|'x') digits ('+'|'-')?
    coeff  := rational like 3 or 3/2

Juxtaposition of factors is the product.  Bracketed lists are left-normed
commutators, expanded at parse time: [a,b,c] = [[a,b],c].  A variable
written without a sign (or with the species wildcard ``x``) is a schema
placeholder standing for every matching signed variable; such text is only
accepted by `parse_schema`, which returns one concrete StarPoly per choice
(unsigned y/z: both symmetries; x: all four kinds).  `parse_star_poly`
rejects placeholders.

Type signatures (n1, n2, n3, n4) describe the multilinear space whose words
use n1 even-symmetric, n2 odd-symmetric, n3 even-skew and n4 odd-skew
variables, numbered positionally: indices 1..n1 are y+, the next n2 are z+,
the next n3 are y-, the last n4 are z-.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

from .algebra import ComponentTag, StarAlgebraSpec, in_component
from .matrices import Mat

WILDCARD = "?"


class VarSymbol(NamedTuple):
    """A free *-algebra variable; species 'y' is even, 'z' is odd."""

    species: str
    symmetry: str
    index: int

    @property
    def parity(self) -> int:
        return 0 if self.species == "y" else 1

    @property
    def tag(self) -> ComponentTag:
        return ComponentTag(self.parity, self.symmetry)

    @property
    def is_placeholder(self) -> bool:
        return self.symmetry == WILDCARD or self.species == "x"

    def __str__(self) -> str:
        sign = "" if self.symmetry == WILDCARD else self.symmetry
        return f"{self.species}{self.index}{sign}"


Word = tuple[VarSymbol, ...]


class StarPoly:
    """Immutable rational combination of words; the free product algebra."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Fraction] | None = None):
        clean: dict[Word, Fraction] = {}
        if terms:
            for word, coeff in terms.items():
                if coeff != 0:
                    clean[word] = Fraction(coeff)
        self.terms: dict[Word, Fraction] = clean

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls) -> "StarPoly":
        return cls()

    @classmethod
    def from_word(cls, word: Iterable[VarSymbol], coeff: Fraction | int = 1) -> "StarPoly":
        return cls({tuple(word): Fraction(coeff)})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[VarSymbol]:
        return {v for word in self.terms for v in word}

    def letter_set(self) -> tuple[VarSymbol, ...]:
        """The common multilinear letter set; error if words differ or repeat.

        Multilinear here means: every word uses each of its letters exactly
        once, and all words use the same letters.
        """
        letters: set[VarSymbol] | None = None
        for word in self.terms:
            if len(set(word)) != len(word):
                raise ValueError(f"word {' '.join(map(str, word))} repeats a variable")
            if letters is None:
                letters = set(word)
            elif letters != set(word):
                raise ValueError("words do not share one letter set; not multilinear")
        if not letters:
            raise ValueError("the zero polynomial has no letter set")
        return tuple(sorted(letters))

    def is_multilinear(self) -> bool:
        try:
            self.letter_set()
        except ValueError:
            return False
        return True

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "StarPoly") -> "StarPoly":
        if not isinstance(other, StarPoly):
            return NotImplemented
        out = dict(self.terms)
        for word, coeff in other.terms.items():
            s = out.get(word, Fraction(0)) + coeff
            if s:
                out[word] = s
            else:
                out.pop(word, None)
        res = StarPoly.__new__(StarPoly)
        res.terms = out
        return res

    def __neg__(self) -> "StarPoly":
        res = StarPoly.__new__(StarPoly)
        res.terms = {w: -c for w, c in self.terms.items()}
        return res

    def __sub__(self, other: "StarPoly") -> "StarPoly":
        if not isinstance(other, StarPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "StarPoly") -> "StarPoly":
        if not isinstance(other, StarPoly):
            return NotImplemented
        out: dict[Word, Fraction] = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                word = wa + wb
                s = out.get(word, Fraction(0)) + ca * cb
                if s:
                    out[word] = s
                else:
                    out.pop(word, None)
        res = StarPoly.__new__(StarPoly)
        res.terms = out
        return res

    def scale(self, value: Fraction | int) -> "StarPoly":
        value = Fraction(value)
        if not value:
            return StarPoly()
        res = StarPoly.__new__(StarPoly)
        res.terms = {w: c * value for w, c in self.terms.items()}
        return res

    def __eq__(self, other: object) -> bool:
        return isinstance(other, StarPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # -- output ----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Word, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: (len(item[0]), item[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks: list[str] = []
        for word, coeff in self.sorted_terms():
            body = " ".join(str(v) for v in word)
            if abs(coeff) != 1:
                body = f"{abs(coeff)} {body}"
            if not chunks:
                chunks.append(body if coeff > 0 else "-" + body)
            else:
                chunks.append(f" + {body}" if coeff > 0 else f" - {body}")
        return "".join(chunks)

    def __repr__(self) -> str:
        return f"StarPoly({self})"


def commutator(a: StarPoly, b: StarPoly) -> StarPoly:
    return a * b - b * a


# -- parsing -----------------------------------------------------------------

_FREE_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<var>(?P<species>[yzx])(?P<index>\d+)(?P<sign>[+-])?)"
    r"|(?P<number>\d+(?:/\d+)?)"
    r"|(?P<op>[-+\[\],])"
    r")"
)


def _tokenize(text: str) -> list[tuple[str, object]]:
    tokens: list[tuple[str, object]] = []
    pos = 0
    while pos < len(text):
        m = _FREE_TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ValueError(
                    f"cannot parse polynomial at position {pos}: {text[pos:]!r}"
                )
            break
        if m.group("var"):
            sym = VarSymbol(m.group("species"), m.group("sign") or WILDCARD, int(m.group("index")))
            tokens.append(("var", sym))
        elif m.group("number"):
            tokens.append(("number", Fraction(m.group("number"))))
        else:
            tokens.append(("op", m.group("op")))
        pos = m.end()
    return tokens


def _parse_raw(text: str) -> StarPoly:
    """Parse, allowing placeholder variables; used by both public parsers."""
    tokens = _tokenize(text)
    result = StarPoly.zero()
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
                raise ValueError(f"dangling sign in: {text!r}")
            break
        coeff = sign
        if tokens[i][0] == "number":
            coeff *= tokens[i][1]  # type: ignore[operator]
            i += 1
        factors: list[StarPoly] = []
        while i < n:
            kind, val = tokens[i]
            if kind == "var":
                factors.append(StarPoly.from_word((val,)))
                i += 1
            elif kind == "op" and val == "[":
                i += 1
                entries: list[VarSymbol] = []
                expect_var = True
                while i < n:
                    k2, v2 = tokens[i]
                    if expect_var:
                        if k2 != "var":
                            raise ValueError(f"expected a variable inside [...] in: {text!r}")
                        entries.append(v2)  # type: ignore[arg-type]
                        expect_var = False
                    else:
                        if (k2, v2) == ("op", ","):
                            expect_var = True
                        elif (k2, v2) == ("op", "]"):
                            break
                        else:
                            raise ValueError(f"expected ',' or ']' inside [...] in: {text!r}")
                    i += 1
                else:
                    raise ValueError(f"unterminated commutator in: {text!r}")
                i += 1  # consume ']'
                if len(entries) < 2:
                    raise ValueError(f"commutator needs at least two entries in: {text!r}")
                acc = StarPoly.from_word((entries[0],))
                for entry in entries[1:]:
                    acc = commutator(acc, StarPoly.from_word((entry,)))
                factors.append(acc)
            elif kind == "number":
                raise ValueError(f"coefficient must lead its term in: {text!r}")
            else:
                break
        if not factors:
            if coeff == 0:  # a bare "0" term
                continue
            raise ValueError(f"term without variables in: {text!r}")
        term = StarPoly({(): coeff})
        for f in factors:
            term = term * f
        result = result + term
    return result


def parse_star_poly(text: str) -> StarPoly:
    """Parse concrete polynomial text; placeholder variables are rejected."""
    poly = _parse_raw(text)
    bad = sorted({v for v in poly.variables() if v.is_placeholder})
    if bad:
        names = ", ".join(str(v) for v in bad)
        raise ValueError(
            f"unsigned variable(s) {names} are only allowed in schema catalogs"
        )
    return poly


_PLACEHOLDER_CHOICES = {
    "y": (("y", "+"), ("y", "-")),
    "z": (("z", "+"), ("z", "-")),
    "x": (("y", "+"), ("y", "-"), ("z", "+"), ("z", "-")),
}


def parse_schema(text: str) -> list[StarPoly]:
    """Parse catalog text, expanding placeholders to all signed variants.

    A placeholder is either an unsigned y/z (two symmetry choices) or an x
    variable (all four kinds).  Each occurrence of the same placeholder
    expands consistently, and the expansion order is deterministic.
    """
    poly = _parse_raw(text)
    placeholders = sorted({v for v in poly.variables() if v.is_placeholder})
    if not placeholders:
        return [poly]
    concrete = {v for v in poly.variables() if not v.is_placeholder}

    choice_lists = []
    for ph in placeholders:
        if ph.symmetry != WILDCARD:
            raise ValueError(
                f"species wildcard {ph.species}{ph.index} must not carry a sign"
            )
        choice_lists.append(_PLACEHOLDER_CHOICES[ph.species])

    out: list[StarPoly] = []
    for combo in itertools.product(*choice_lists):
        mapping = {
            ph: VarSymbol(species, symmetry, ph.index)
            for ph, (species, symmetry) in zip(placeholders, combo)
        }
        clash = sorted(str(v) for v in mapping.values() if v in concrete)
        if clash:
            raise ValueError(
                f"schema expansion collides with concrete variable(s) {', '.join(clash)}"
            )
        terms = {
            tuple(mapping.get(v, v) for v in word): coeff
            for word, coeff in poly.terms.items()
        }
        if len(terms) != len(poly.terms):
            raise ValueError("schema expansion merged distinct words")
        out.append(StarPoly(terms))
    return out


# -- type signatures and word enumeration ------------------------------------


class TypeSignature(NamedTuple):
    """Counts (n1, n2, n3, n4) of even-sym, odd-sym, even-skew, odd-skew letters."""

    n1: int
    n2: int
    n3: int
    n4: int

    @property
    def total(self) -> int:
        return self.n1 + self.n2 + self.n3 + self.n4

    @property
    def odd_count(self) -> int:
        return self.n2 + self.n4

    def variables(self) -> tuple[VarSymbol, ...]:
        """The fixed letter set, numbered positionally 1..n across the blocks."""
        out: list[VarSymbol] = []
        blocks = (("y", "+", self.n1), ("z", "+", self.n2), ("y", "-", self.n3), ("z", "-", self.n4))
        index = 0
        for species, symmetry, count in blocks:
            for _ in range(count):
                index += 1
                out.append(VarSymbol(species, symmetry, index))
        return tuple(out)


def enumerate_words(sig: TypeSignature) -> list[Word]:
    """All n! arrangements of the signature's letters, in permutation order."""
    if any(c < 0 for c in sig):
        raise ValueError(f"negative count in signature {sig}")
    if sig.total == 0:
        raise ValueError("empty signature has no words")
    return [tuple(p) for p in itertools.permutations(sig.variables())]


# -- substitution -------------------------------------------------------------


def substitute(
    f: StarPoly, assignment: Mapping[VarSymbol, Mat], spec: StarAlgebraSpec
) -> Mat:
    """Evaluate f with matrices in place of variables; exact.

    Every variable of f must be assigned a matrix lying in the component
    the variable names (even/odd by species, symmetric/skew by sign).
    """
    checked: dict[VarSymbol, Mat] = {}
    for v in sorted(f.variables()):
        if v not in assignment:
            raise ValueError(f"no matrix assigned to variable {v}")
        m = assignment[v]
        if not in_component(spec, m, v.tag):
            raise ValueError(
                f"matrix assigned to {v} is not in component {v.tag.label} of {spec.id}"
            )
        checked[v] = m
    total = Mat.zero(spec.n)
    for word, coeff in f.terms.items():
        value = Mat.identity(spec.n)
        for v in word:
            value = value * checked[v]
        total = total + value.scale(coeff)
    return total
