"""Upper-triangular matrix algebras with a Z2-grading and a star map.

The grading is elementary: a {0,1} degree g_i is attached to each row/column
index and the matrix unit E(i,j) gets degree g_i + g_j mod 2.  Four star maps
are supported, all signed permutations of the matrix units:

* ``reflection``        — flip across the anti-diagonal, E(i,j) -> E(n+1-j, n+1-i);
* ``symplectic``        — the reflection conjugated by diag(1..1,-1..-1) (even n);
* ``super-reflection``  — reflection composed with the parity twist phi;
* ``super-symplectic``  — symplectic composed with phi (even n).

phi is the automorphism that negates a homogeneous element according to how
deep it sits in the chain of powers of the odd part: writing O for the span
of the odd matrix units and O^m for the span of m-fold products (O^0 = the
whole algebra), an even unit u gets sign (-1)^k for the largest k with
u in O^(2k), and an odd unit the sign (-1)^k for the largest k with
u in O^(2k+1).  Composing with the twist is what makes the reflection obey
the signed anti-homomorphism rule (ab)* = (-1)^{|a||b|} b* a*.

All four kinds require the grading to be mirror-balanced,
g1+gn = g2+g(n-1) = ... = gn+g1 (mod 2): that is exactly the condition for
the anti-diagonal flip to preserve the grading, and for the super kinds it
is the condition for a star map of this type to exist at all.

Every algebra splits as A0+ ⊕ A0- ⊕ A1+ ⊕ A1- (degree, star symmetry).  The
component bases are deterministic: diagonal-led elements first by row, then
star-fixed anti-diagonal units by row, then paired units by leading position.
The generic element of a component attaches one polynomial parameter per
basis element, named by the basis element's leading position.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple, Sequence

from .matrices import Mat, Position
from .poly import ParamId, Poly

GRADED_KINDS = ("reflection", "symplectic")
SUPER_KINDS = ("super-reflection", "super-symplectic")
KINDS = GRADED_KINDS + SUPER_KINDS

STAR_TYPE_CONDITION = "g1+gn = g2+g(n-1) = ... = gn+g1 (mod 2)"


class ComponentTag(NamedTuple):
    """One of the four pieces of the decomposition: parity and star symmetry."""

    parity: int  # 0 (even) or 1 (odd)
    symmetry: str  # "+" (symmetric) or "-" (skew)

    @property
    def label(self) -> str:
        return f"A{self.parity}{self.symmetry}"

    @classmethod
    def from_label(cls, label: str) -> "ComponentTag":
        if len(label) == 3 and label[0] == "A" and label[1] in "01" and label[2] in "+-":
            return cls(int(label[1]), label[2])
        raise ValueError(f"unknown component label: {label!r} (expected e.g. 'A0+')")


COMPONENT_TAGS = (
    ComponentTag(0, "+"),
    ComponentTag(0, "-"),
    ComponentTag(1, "+"),
    ComponentTag(1, "-"),
)


@dataclass(frozen=True)
class StarAlgebraSpec:
    """A fully built algebra: grading, star action, and component bases."""

    n: int
    grading: tuple[int, ...]
    kind: str
    star_table: dict[Position, tuple[Position, int]]
    components: dict[str, tuple[Mat, ...]]
    phi_signs: dict[Position, int]

    def degree(self, i: int, j: int) -> int:
        return (self.grading[i - 1] + self.grading[j - 1]) % 2

    def component(self, tag: ComponentTag | str) -> tuple[Mat, ...]:
        label = tag if isinstance(tag, str) else tag.label
        return self.components[label]

    def dims(self) -> tuple[int, int, int, int]:
        return tuple(len(self.components[t.label]) for t in COMPONENT_TAGS)  # type: ignore[return-value]

    @property
    def id(self) -> str:
        return f"ut{self.n}-{''.join(map(str, self.grading))}-{self.kind}"


def _positions(n: int) -> list[Position]:
    return [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


def _phi_signs(n: int, grading: Sequence[int]) -> dict[Position, int]:
    """Sign of each matrix unit under the parity twist phi."""

    def deg(pos: Position) -> int:
        return (grading[pos[0] - 1] + grading[pos[1] - 1]) % 2

    odd = {pos for pos in _positions(n) if deg(pos) == 1}
    # powers[m] = positions of units spanning the m-fold products of odd units
    powers: list[set[Position]] = [set(_positions(n)), set(odd)]
    while powers[-1]:
        prev = powers[-1]
        powers.append(
            {(i, l) for (i, j) in prev for (k, l) in odd if j == k}
        )
    top = len(powers) - 1  # powers[top] == empty

    signs: dict[Position, int] = {}
    for pos in _positions(n):
        parity = deg(pos)
        k = 0
        while parity + 2 * (k + 1) <= top and pos in powers[parity + 2 * (k + 1)]:
            k += 1
        signs[pos] = -1 if k % 2 else 1
    return signs


def _is_star_type(grading: Sequence[int]) -> bool:
    n = len(grading)
    first = (grading[0] + grading[n - 1]) % 2
    return all((grading[i] + grading[n - 1 - i]) % 2 == first for i in range(n))


def build_algebra(n: int, grading: Sequence[int], kind: str) -> StarAlgebraSpec:
    """Construct the algebra, its star table, and the four component bases.

    Raises ValueError for: unknown kind; grading of the wrong length or with
    entries outside {0,1}; a symplectic kind with odd n; any kind with a
    grading that is not mirror-balanced (the star map would not preserve the
    grading, and for the super kinds it would not exist).
    """
    if n < 1:
        raise ValueError(f"matrix size must be >= 1, got {n}")
    if kind not in KINDS:
        raise ValueError(f"unknown star kind {kind!r}; expected one of {', '.join(KINDS)}")
    grading = tuple(grading)
    if len(grading) != n:
        raise ValueError(f"grading length {len(grading)} does not match n={n}")
    if any(g not in (0, 1) for g in grading):
        raise ValueError(f"grading entries must be 0 or 1, got {grading}")
    if kind in ("symplectic", "super-symplectic") and n % 2:
        raise ValueError(f"{kind} star map requires even n, got n={n}")
    if not _is_star_type(grading):
        raise ValueError(
            f"grading {grading} does not satisfy {STAR_TYPE_CONDITION}; "
            f"no {kind} star map preserves it"
        )

    phi = (
        _phi_signs(n, grading)
        if kind in SUPER_KINDS
        else {pos: 1 for pos in _positions(n)}
    )

    # diag(1,...,1,-1,...,-1) conjugation signs for the symplectic kinds
    def half_sign(index: int) -> int:
        return 1 if index <= n // 2 else -1

    star_table: dict[Position, tuple[Position, int]] = {}
    for (i, j) in _positions(n):
        target = (n + 1 - j, n + 1 - i)
        sign = phi[(i, j)]
        if kind in ("symplectic", "super-symplectic"):
            sign *= half_sign(target[0]) * half_sign(target[1])
        star_table[(i, j)] = (target, sign)

    components = _component_bases(n, grading, star_table)
    return StarAlgebraSpec(
        n=n,
        grading=grading,
        kind=kind,
        star_table=star_table,
        components=components,
        phi_signs=phi,
    )


def _component_bases(
    n: int,
    grading: Sequence[int],
    star_table: Mapping[Position, tuple[Position, int]],
) -> dict[str, tuple[Mat, ...]]:
    def deg(pos: Position) -> int:
        return (grading[pos[0] - 1] + grading[pos[1] - 1]) % 2

    raw: dict[str, list[tuple[tuple[int, int, int], Mat]]] = {
        t.label: [] for t in COMPONENT_TAGS
    }

    def sort_key(lead: Position) -> tuple[int, int, int]:
        i, j = lead
        if i == j:
            category = 0
        elif i + j == n + 1:
            category = 1
        else:
            category = 2
        return (category, i, j)

    seen: set[Position] = set()
    for pos in _positions(n):
        if pos in seen:
            continue
        target, sign = star_table[pos]
        parity = deg(pos)
        if target == pos:
            # star-fixed unit: symmetric when the sign is +1, skew when -1
            seen.add(pos)
            tag = ComponentTag(parity, "+" if sign == 1 else "-")
            raw[tag.label].append((sort_key(pos), Mat.unit(n, *pos)))
        else:
            seen.update((pos, target))
            lead, other = (pos, target) if pos < target else (target, pos)
            lead_sign = sign if lead == pos else star_table[lead][1]
            base = Mat.unit(n, *lead)
            mirror = Mat.unit(n, *other).scale(lead_sign)
            raw[ComponentTag(parity, "+").label].append((sort_key(lead), base + mirror))
            raw[ComponentTag(parity, "-").label].append((sort_key(lead), base - mirror))

    out: dict[str, tuple[Mat, ...]] = {}
    for label, items in raw.items():
        items.sort(key=lambda pair: pair[0])
        out[label] = tuple(m for _, m in items)
    return out


def odd_nilindex(spec: StarAlgebraSpec) -> int:
    """Smallest m >= 1 with (odd part)^m = 0.

    Any product of homogeneous elements containing at least that many odd
    factors vanishes, however many even factors are interspersed: a nonzero
    mixed product walks a position chain whose odd steps can be spliced into
    a chain of pure odd steps of the same length.
    """
    odd = {pos for pos in _positions(spec.n) if spec.degree(*pos) == 1}
    current = set(odd)
    m = 1
    while current:
        current = {(i, l) for (i, j) in current for (k, l) in odd if j == k}
        m += 1
    return m


def leading_position(m: Mat) -> Position:
    """Lexicographically smallest occupied position; parameter name anchor."""
    if m.is_zero():
        raise ValueError("zero matrix has no leading position")
    return min(m.support())


def apply_star(spec: StarAlgebraSpec, m: Mat) -> Mat:
    """The star map, extended linearly to polynomial entries."""
    if m.n != spec.n:
        raise ValueError(f"matrix size {m.n} does not match algebra size {spec.n}")
    out: dict[Position, Poly] = {}
    for pos, p in m.entries.items():
        target, sign = spec.star_table[pos]
        q = p if sign == 1 else -p
        out[target] = out.get(target, Poly.zero()) + q
    return Mat(spec.n, out)


def homogeneous_degree(spec: StarAlgebraSpec, m: Mat) -> int | None:
    """0 or 1 if all occupied positions share that degree, else None."""
    degrees = {spec.degree(i, j) for (i, j) in m.support()}
    if len(degrees) == 1:
        return degrees.pop()
    return None


def in_component(spec: StarAlgebraSpec, m: Mat, tag: ComponentTag) -> bool:
    """Exact span membership test for one of the four components."""
    if m.is_zero():
        return True
    if homogeneous_degree(spec, m) != tag.parity:
        return False
    starred = apply_star(spec, m)
    return starred == m if tag.symmetry == "+" else starred == -m


def generic_element(spec: StarAlgebraSpec, tag: ComponentTag, slot: int) -> Mat:
    """Sum of xi[r,c;slot] * B over the component basis, fresh parameter each.

    (r, c) is the leading position of the basis element B, so the parameter
    names match the customary generic-matrix displays.
    """
    basis = spec.component(tag)
    if not basis:
        raise ValueError(f"component {tag.label} of {spec.id} is empty")
    total = Mat.zero(spec.n)
    for b in basis:
        r, c = leading_position(b)
        total = total + b.scale(Poly.variable(ParamId(r, c, slot)))
    return total


def random_element(
    spec: StarAlgebraSpec,
    tag: ComponentTag,
    seed: int | random.Random,
    bound: int = 5,
) -> Mat:
    """Random rational combination of the component basis; deterministic.

    Coefficients are p/q with |p| <= bound and 1 <= q <= bound, so bound=1
    draws coefficients from {-1, 0, 1}.
    """
    basis = spec.component(tag)
    if not basis:
        raise ValueError(f"component {tag.label} of {spec.id} is empty")
    if bound < 1:
        raise ValueError(f"coefficient bound must be >= 1, got {bound}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    total = Mat.zero(spec.n)
    for b in basis:
        coeff = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        total = total + b.scale(coeff)
    return total


def random_homogeneous(
    spec: StarAlgebraSpec, parity: int, seed: int | random.Random, bound: int = 5
) -> Mat:
    """Random element of A_parity (no symmetry constraint); deterministic."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    total = Mat.zero(spec.n)
    for pos in _positions(spec.n):
        if spec.degree(*pos) == parity:
            coeff = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
            total = total + Mat.unit(spec.n, *pos).scale(coeff)
    return total


# -- JSON form ---------------------------------------------------------------


def spec_to_json(spec: StarAlgebraSpec) -> dict:
    return {
        "schema": "star-algebra/1",
        "n": spec.n,
        "grading": list(spec.grading),
        "kind": spec.kind,
        "star_table": [
            [i, j, p, q, sign]
            for (i, j), ((p, q), sign) in sorted(spec.star_table.items())
        ],
        "components": {
            label: [
                [[i, j, str(c)] for (i, j), c in sorted(m.constant_entries().items())]
                for m in basis
            ]
            for label, basis in spec.components.items()
        },
    }


def spec_from_json(doc: Mapping) -> StarAlgebraSpec:
    """Rebuild from the JSON form; the result is re-derived and cross-checked."""
    if doc.get("schema") != "star-algebra/1":
        raise ValueError(f"unsupported algebra schema: {doc.get('schema')!r}")
    spec = build_algebra(int(doc["n"]), [int(g) for g in doc["grading"]], doc["kind"])
    table = {(i, j): ((p, q), s) for i, j, p, q, s in (tuple(row) for row in doc["star_table"])}
    if table != spec.star_table:
        raise ValueError("star table in document does not match the rebuilt algebra")
    for label, basis in doc["components"].items():
        rebuilt = [
            {(int(i), int(j)): Fraction(c) for i, j, c in element} for element in basis
        ]
        ours = [m.constant_entries() for m in spec.components[label]]
        if rebuilt != ours:
            raise ValueError(f"component {label} in document does not match the rebuilt algebra")
    return spec
