"""Upper-triangular n x n matrices with exact polynomial entries.

Entries are indexed 1-based as (row, col) with row <= col; everything below
the diagonal is identically zero and may not be assigned.  Entry values are
`Poly` (constants are constant polynomials), so the same class serves both
concrete rational matrices and generic matrices whose entries are parameters.

Constant matrices have a text form used in catalogs, reports and
certificates::

    e11+e44       the matrix unit sum E(1,1) + E(4,4)
    2*e12 - 1/2*e23
    I             the identity
    0             the zero matrix

`parse_mat_expr` / `format_mat` round-trip this form (single-digit indices,
so n <= 9 — far beyond anything computed here).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .poly import Poly

Position = tuple[int, int]


class Mat:
    """Immutable sparse upper-triangular matrix with Poly entries."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries: Mapping[Position, Poly] | None = None):
        if n < 1:
            raise ValueError(f"matrix size must be positive, got {n}")
        clean: dict[Position, Poly] = {}
        if entries:
            for (i, j), p in entries.items():
                if not (1 <= i <= j <= n):
                    raise ValueError(
                        f"entry ({i},{j}) outside the upper triangle of size {n}"
                    )
                if not p.is_zero():
                    clean[(i, j)] = p
        self.n = n
        self.entries: dict[Position, Poly] = clean

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Mat":
        return cls(n)

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "Mat":
        """The matrix unit E(i,j)."""
        return cls(n, {(i, j): Poly.const(1)})

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(n, {(i, i): Poly.const(1) for i in range(1, n + 1)})

    @classmethod
    def from_scalars(cls, n: int, entries: Mapping[Position, Fraction | int]) -> "Mat":
        return cls(n, {pos: Poly.const(v) for pos, v in entries.items()})

    # -- inspection ------------------------------------------------------

    def support(self) -> set[Position]:
        return set(self.entries)

    def entry(self, i: int, j: int) -> Poly:
        return self.entries.get((i, j), Poly.zero())

    def is_zero(self) -> bool:
        return not self.entries

    def is_constant(self) -> bool:
        return all(p.is_constant() for p in self.entries.values())

    def constant_entries(self) -> dict[Position, Fraction]:
        """The entries as plain rationals; ValueError if any is non-constant."""
        out = {}
        for pos, p in self.entries.items():
            if not p.is_constant():
                raise ValueError(f"entry {pos} is not constant: {p}")
            out[pos] = p.constant_value()
        return out

    def items(self) -> Iterator[tuple[Position, Poly]]:
        return iter(sorted(self.entries.items()))

    # -- arithmetic ------------------------------------------------------

    def _require_same_size(self, other: "Mat") -> None:
        if self.n != other.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "Mat") -> "Mat":
        if not isinstance(other, Mat):
            return NotImplemented
        self._require_same_size(other)
        out = dict(self.entries)
        for pos, p in other.entries.items():
            s = out.get(pos, Poly.zero()) + p
            if s.is_zero():
                out.pop(pos, None)
            else:
                out[pos] = s
        return Mat(self.n, out)

    def __neg__(self) -> "Mat":
        return Mat(self.n, {pos: -p for pos, p in self.entries.items()})

    def __sub__(self, other: "Mat") -> "Mat":
        if not isinstance(other, Mat):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "Mat") -> "Mat":
        if not isinstance(other, Mat):
            return NotImplemented
        self._require_same_size(other)
        out: dict[Position, Poly] = {}
        by_row: dict[int, list[tuple[int, Poly]]] = {}
        for (j, k), p in other.entries.items():
            by_row.setdefault(j, []).append((k, p))
        for (i, j), p in self.entries.items():
            for k, q in by_row.get(j, ()):
                pos = (i, k)
                s = out.get(pos, Poly.zero()) + p * q
                if s.is_zero():
                    out.pop(pos, None)
                else:
                    out[pos] = s
        return Mat(self.n, out)

    def scale(self, value: Fraction | int | Poly) -> "Mat":
        factor = value if isinstance(value, Poly) else Poly.const(value)
        return Mat(self.n, {pos: p * factor for pos, p in self.entries.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Mat) and self.n == other.n and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.entries.items())))

    def __str__(self) -> str:
        if self.is_constant():
            return format_mat(self)
        parts = [f"({i},{j}): {p}" for (i, j), p in self.items()]
        return "{" + ", ".join(parts) + "}"

    def __repr__(self) -> str:
        return f"Mat({self.n}, {self})"


def mat_sum(n: int, mats: Iterable[Mat]) -> Mat:
    total = Mat.zero(n)
    for m in mats:
        total = total + m
    return total


# -- constant-matrix text form ----------------------------------------------

_MAT_TOKEN_RE = re.compile(
    r"\s*(?:(?P<unit>e(?P<row>\d)(?P<col>\d))|(?P<ident>I)|(?P<number>\d+(?:/\d+)?)|(?P<op>[-+*]))"
)


def parse_mat_expr(text: str, n: int) -> Mat:
    """Parse a constant matrix expression like ``e11+e44`` or ``2*e12 - I``."""
    tokens: list[tuple[str, object]] = []
    pos = 0
    while pos < len(text):
        m = _MAT_TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:].strip()
            if rest == "0" or not rest:
                break
            raise ValueError(f"cannot parse matrix expression at: {text[pos:]!r}")
        if m.group("unit"):
            tokens.append(("unit", (int(m.group("row")), int(m.group("col")))))
        elif m.group("ident"):
            tokens.append(("ident", None))
        elif m.group("number"):
            tokens.append(("number", Fraction(m.group("number"))))
        else:
            tokens.append(("op", m.group("op")))
        pos = m.end()
    if not tokens:
        stripped = text.strip()
        if stripped in ("0", ""):
            return Mat.zero(n)
        raise ValueError(f"cannot parse matrix expression: {text!r}")

    result = Mat.zero(n)
    i = 0
    count = len(tokens)
    while i < count:
        sign = Fraction(1)
        saw_sign = False
        while i < count and tokens[i][0] == "op" and tokens[i][1] in "+-":
            if tokens[i][1] == "-":
                sign = -sign
            saw_sign = True
            i += 1
        if i >= count:
            if saw_sign:
                raise ValueError(f"dangling sign in matrix expression: {text!r}")
            break
        coeff = sign
        base: Mat | None = None
        saw_factor = False
        while i < count:
            kind, val = tokens[i]
            if kind == "number":
                coeff *= val  # type: ignore[operator]
            elif kind == "unit":
                if base is not None:
                    raise ValueError(f"two matrix factors in one term: {text!r}")
                r, c = val  # type: ignore[misc]
                base = Mat.unit(n, r, c)
            elif kind == "ident":
                if base is not None:
                    raise ValueError(f"two matrix factors in one term: {text!r}")
                base = Mat.identity(n)
            elif kind == "op" and val == "*":
                pass
            else:
                break
            saw_factor = True
            i += 1
        if not saw_factor:
            raise ValueError(f"empty term in matrix expression: {text!r}")
        if base is None:
            if coeff == 0:  # a bare "0" term
                continue
            raise ValueError(f"term without a matrix unit in: {text!r}")
        result = result + base.scale(coeff)
    return result


def format_mat(mat: Mat) -> str:
    """Canonical text for a constant matrix; inverse of `parse_mat_expr`."""
    scalars = mat.constant_entries()
    if not scalars:
        return "0"
    chunks: list[str] = []
    for (i, j), value in sorted(scalars.items()):
        body = f"e{i}{j}" if abs(value) == 1 else f"{abs(value)}*e{i}{j}"
        if not chunks:
            chunks.append(body if value > 0 else "-" + body)
        else:
            chunks.append(f" + {body}" if value > 0 else f" - {body}")
    return "".join(chunks)
