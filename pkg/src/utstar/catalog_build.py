"""Generators for the identity-suite catalog files shipped with the package.

A catalog is a plain-text file with a small ``key: value`` header, a ``---``
separator, and one item per line.  Item lines have pipe-separated fields:

    <id> | identity | <polynomial text>
    <id> | not-identity | <polynomial text>
    <id> | evaluate | <polynomial text> | <assignments> | <expected matrix>

Polynomial text uses the free *-polynomial grammar; identity lines may use
unsigned schema variables (``y1``, ``z2``, ``x3``), which the suite runner
expands to every signed variant.  Assignments are ``var=matrix`` pairs joined
by ``;`` with matrix expressions such as ``e11 - e44`` or ``I``.

Four catalogs are generated:

* ``ut3-010-superreflection`` — the defining identity list for the 3x3
  algebra with grading 010 and the super-reflection star map.
* ``ut4-0101-supersymplectic`` — bounded instantiations of the reorder,
  straightening and splice families for the 4x4 algebra with grading 0101
  and the super-symplectic star map (schema parameters: word length k <= 4
  for the odd-boundary reorder family, k <= 3 with all permutations
  elsewhere, all sign patterns, both signs per unsigned variable).
* ``ut4-0101-supersymplectic-mutated`` — a spread sample of the concrete
  identities above, each with the sign of one term flipped; every mutant is
  verified to be a non-identity before it is written.
* ``ut4-0101-supersymplectic-evaluations`` — product/commutator words of
  total degree <= 6 paired with distinguished component assignments and
  their exact evaluation, one line per parameter choice.

The generators are deterministic, so regenerating the catalogs must
reproduce the shipped files byte for byte.
"""

from __future__ import annotations

from itertools import permutations, product
from typing import Iterable, Sequence

from .algebra import StarAlgebraSpec, build_algebra
from .freepoly import (
    StarPoly,
    VarSymbol,
    WILDCARD,
    commutator,
    parse_schema,
    parse_star_poly,
    substitute,
)
from .identities import is_identity
from .matrices import Mat, format_mat, parse_mat_expr

UT3_SUITE = "ut3-010-superreflection"
UT4_SUITE = "ut4-0101-supersymplectic"
UT4_MUTANT_SUITE = "ut4-0101-supersymplectic-mutated"
UT4_EVALUATION_SUITE = "ut4-0101-supersymplectic-evaluations"

MUTANT_COUNT = 24

_SIGNS = ("+", "-")


def _y(index: int, sign: str) -> VarSymbol:
    return VarSymbol("y", sign, index)


def _z(index: int, sign: str) -> VarSymbol:
    return VarSymbol("z", sign, index)


def _word(letters: Sequence[VarSymbol]) -> StarPoly:
    return StarPoly.from_word(letters)


def _left_normed(letters: Sequence[VarSymbol]) -> StarPoly:
    acc = _word(letters[:1])
    for letter in letters[1:]:
        acc = commutator(acc, _word([letter]))
    return acc


def _sign_power(exponent: int) -> int:
    return 1 if exponent % 2 == 0 else -1


def _pattern_string(pattern: Sequence[str]) -> str:
    return "".join("p" if sign == "+" else "m" for sign in pattern)


def _perm_string(perm: Sequence[int]) -> str:
    return "".join(str(i) for i in perm)


# ---------------------------------------------------------------------------
# catalog 1: the 3x3 identity list
# ---------------------------------------------------------------------------

_UT3_ITEMS: tuple[tuple[str, str], ...] = (
    ("sym-sym-commutator", "[y1+, y2+]"),
    ("sym-skew-commutator", "[y1+, y2-]"),
    ("skew-triple-reversal", "y1- y2- y3- - y3- y2- y1-"),
    ("double-skew-commutator", "[y1-, y2-] [y3-, y4-]"),
    ("odd-times-skew-commutator", "z1 [y1-, y2-]"),
    ("skew-commutator-times-odd", "[y1-, y2-] z1"),
    ("skew-odd-skew", "y1- z1 y2-"),
    ("odd-skew-odd", "z1 y1- z2"),
    # The swap relation below holds only when both odd letters carry the
    # same symmetry (the mixed pair satisfies the anticommutator version
    # instead), so it is written as two signed instances rather than an
    # unsigned schema.
    ("odd-sym-odd-swap-symmetric", "z1+ y1+ z2+ - z2+ y1+ z1+"),
    ("odd-sym-odd-swap-skew", "z1- y1+ z2- - z2- y1+ z1-"),
    ("odd-sym-commutator", "[z1+, z2+]"),
    ("odd-skew-commutator", "[z1-, z2-]"),
    ("odd-mixed-anticommutator", "z1+ z2- + z2- z1+"),
    ("odd-triple", "z1 z2 z3"),
)


def build_ut3_items() -> list[tuple[str, str, str]]:
    return [(item_id, "identity", text) for item_id, text in _UT3_ITEMS]


# ---------------------------------------------------------------------------
# catalog 2: bounded identity families for the 4x4 algebra
# ---------------------------------------------------------------------------

_UT4_FIXED_ITEMS: tuple[tuple[str, str], ...] = (
    ("comm-any-comm", "[y1, y2] x5 [y3, y4]"),
    ("jacobi", "[x1, x2, x3] - [x3, x2, x1] - [x1, x3, x2]"),
    ("long-comm-tail-swap-k4", "[y1, y2, y4, y3] - [y1, y2, y3, y4]"),
    ("sym-odd-even-sym-odd", "z1+ y1 z2+"),
    ("sym-odd-any-odd-swap", "z1+ z2 z3+ - z3+ z2 z1+"),
    ("skew-odd-any-odd-swap", "z1- z2 z3- - z3- z2 z1-"),
    ("four-odd", "z1 z2 z3 z4"),
    ("skew-sym-skew-odd-mix", "z1- y1 z2+ y2 z3-"),
    ("skew-odd-splice-swap", "z1- y1 z2- y2 z3+ + z3+ y1 z2- y2 z1-"),
)


def _straightening_items() -> list[tuple[str, str, str]]:
    items: list[tuple[str, str, str]] = []
    for a in (2, 3, 4):
        inner = ", ".join(f"y{i}" for i in range(1, a + 1))
        tail_plus = f"y{a + 1}+"
        tail_minus = f"y{a + 1}-"
        items.append(
            (
                f"comm-odd-sym-straighten-a{a}",
                "identity",
                f"[{inner}] z1 {tail_plus} - {tail_plus} [{inner}] z1",
            )
        )
        items.append(
            (
                f"comm-odd-skew-straighten-a{a}",
                "identity",
                f"[{inner}] z1 {tail_minus} + {tail_minus} [{inner}] z1",
            )
        )
    return items


def _nontrivial_perms(k: int) -> list[tuple[int, ...]]:
    return [perm for perm in permutations(range(1, k + 1)) if perm != tuple(range(1, k + 1))]


# Word length 4 for the odd-boundary reorder family would need 23 nontrivial
# permutations; a fixed spread (reversal, adjacent swap, full cycle) keeps the
# catalog small while still exercising parity bookkeeping at that length.
_SAMPLED_PERMS_K4: tuple[tuple[int, ...], ...] = ((4, 3, 2, 1), (2, 1, 3, 4), (2, 3, 4, 1))


def _reorder_across_odd_items() -> list[tuple[str, str, str]]:
    """Reorder families with one odd letter at the word boundary (k <= 4)."""
    items: list[tuple[str, str, str]] = []
    for k in (2, 3, 4):
        perms = _nontrivial_perms(k) if k <= 3 else list(_SAMPLED_PERMS_K4)
        for pattern in product(_SIGNS, repeat=k):
            ws = [_y(i + 1, sign) for i, sign in enumerate(pattern)]
            g = pattern.count("-")
            for perm in perms:
                fwd = _word(ws) - _word([ws[i - 1] for i in perm])
                rev = _word(list(reversed(ws))) - _word([ws[i - 1] for i in reversed(perm)])
                for odd_sign, tag, parity in (("+", "sym", g + 1), ("-", "skew", g)):
                    z = _word([_z(1, odd_sign)])
                    poly = fwd * z + (z * rev).scale(_sign_power(parity))
                    item_id = (
                        f"reorder-across-odd-{tag}-k{k}"
                        f"-{_pattern_string(pattern)}-s{_perm_string(perm)}"
                    )
                    items.append((item_id, "identity", str(poly)))
    return items


def _reorder_beside_two_odd_items() -> list[tuple[str, str, str]]:
    """Even-word reorder left of / between / right of two odd letters (k <= 3)."""
    items: list[tuple[str, str, str]] = []
    placements = (("left", "w z1 z2"), ("mid", "z1 w z2"), ("right", "z1 z2 w"))
    for k in (2, 3):
        for pattern in product(_SIGNS, repeat=k):
            ws = [_y(i + 1, sign) for i, sign in enumerate(pattern)]
            z1, z2 = _word([_z(1, WILDCARD)]), _word([_z(2, WILDCARD)])
            for perm in _nontrivial_perms(k):
                straight = _word(ws)
                shuffled = _word([ws[i - 1] for i in perm])
                for tag, layout in placements:
                    if layout == "w z1 z2":
                        poly = shuffled * z1 * z2 - straight * z1 * z2
                    elif layout == "z1 w z2":
                        poly = z1 * shuffled * z2 - z1 * straight * z2
                    else:
                        poly = z1 * z2 * shuffled - z1 * z2 * straight
                    item_id = (
                        f"reorder-{tag}-of-odd-pair-k{k}"
                        f"-{_pattern_string(pattern)}-s{_perm_string(perm)}"
                    )
                    items.append((item_id, "identity", str(poly)))
    return items


def _odd_pull_items() -> list[tuple[str, str, str]]:
    """Pulling a skew or symmetric odd letter across an even word (k <= 3)."""
    items: list[tuple[str, str, str]] = []
    for k in (1, 2, 3):
        for pattern in product(_SIGNS, repeat=k):
            ws = _word([_y(i + 1, sign) for i, sign in enumerate(pattern)])
            g = pattern.count("-")
            sign = _sign_power(g + 1)
            z_minus, z_plus = _word([_z(1, "-")]), _word([_z(2, "+")])
            poly = z_minus * ws * z_plus + (ws * z_minus * z_plus).scale(sign)
            items.append(
                (
                    f"skew-pull-left-k{k}-{_pattern_string(pattern)}",
                    "identity",
                    str(poly),
                )
            )
            z_plus, z_minus = _word([_z(1, "+")]), _word([_z(2, "-")])
            poly = z_plus * ws * z_minus + (z_plus * z_minus * ws).scale(sign)
            items.append(
                (
                    f"skew-pull-right-k{k}-{_pattern_string(pattern)}",
                    "identity",
                    str(poly),
                )
            )
    return items


def _group_letters(start: int, sym: int, skew: int) -> tuple[list[VarSymbol], int]:
    letters = [_y(start + i, "+") for i in range(sym)]
    letters += [_y(start + sym + i, "-") for i in range(skew)]
    return letters, start + sym + skew


def _two_skew_odd_group_items() -> list[tuple[str, str, str]]:
    """Four-term relation moving two skew odd letters across three even groups.

    Groups I, J, L hold ``sym`` symmetric then ``skew`` skew even letters; the
    relation cancels identically unless I and L are both nonempty, so those
    parameter choices are skipped.
    """
    items: list[tuple[str, str, str]] = []
    for total in (2, 3):
        for a in range(total + 1):
            for a_skew in range(total + 1 - a):
                for b in range(total + 1 - a - a_skew):
                    for b_skew in range(total + 1 - a - a_skew - b):
                        for c in range(total + 1 - a - a_skew - b - b_skew):
                            c_skew = total - a - a_skew - b - b_skew - c
                            if a + a_skew == 0 or c + c_skew == 0:
                                continue
                            group_i, nxt = _group_letters(1, a, a_skew)
                            group_j, nxt = _group_letters(nxt, b, b_skew)
                            group_l, _ = _group_letters(nxt, c, c_skew)
                            z1, z2 = _word([_z(1, "-")]), _word([_z(2, "-")])
                            wi, wj, wl = _word(group_i), _word(group_j), _word(group_l)
                            p1 = wi * z1 * wj * z2 * wl
                            p2 = z1 * wi * wj * z2 * wl
                            p3 = z1 * wi * wj * wl * z2
                            p4 = wi * z1 * wj * wl * z2
                            poly = (
                                p1.scale(_sign_power(a_skew + c_skew))
                                - p2.scale(_sign_power(c_skew))
                                + p3
                                - p4.scale(_sign_power(a_skew))
                            )
                            item_id = (
                                "two-skew-odd-groups"
                                f"-i{a}{a_skew}-j{b}{b_skew}-l{c}{c_skew}"
                            )
                            items.append((item_id, "identity", str(poly)))
    return items


def _three_odd_items() -> list[tuple[str, str, str]]:
    """Three odd letters against an even word (k <= 3)."""
    items: list[tuple[str, str, str]] = []
    for k in (1, 2, 3):
        for pattern in product(_SIGNS, repeat=k):
            ws = _word([_y(i + 1, sign) for i, sign in enumerate(pattern)])
            g = pattern.count("-")
            z1, z2, z3 = (_word([_z(i, WILDCARD)]) for i in (1, 2, 3))
            poly = z1 * z2 * ws * z3 - (z1 * ws * z2 * z3).scale(_sign_power(g))
            items.append(
                (
                    f"three-odd-middle-swap-k{k}-{_pattern_string(pattern)}",
                    "identity",
                    str(poly),
                )
            )
            poly = (ws * z1 * z2 * z3).scale(_sign_power(g)) - z1 * z2 * z3 * ws
            items.append(
                (
                    f"three-odd-pass-evens-k{k}-{_pattern_string(pattern)}",
                    "identity",
                    str(poly),
                )
            )
    return items


def build_ut4_items() -> list[tuple[str, str, str]]:
    items = [(item_id, "identity", text) for item_id, text in _UT4_FIXED_ITEMS]
    items += _straightening_items()
    items += _reorder_across_odd_items()
    items += _reorder_beside_two_odd_items()
    items += _odd_pull_items()
    items += _two_skew_odd_group_items()
    items += _three_odd_items()
    return items


# ---------------------------------------------------------------------------
# catalog 3: verified single-sign-flip mutants
# ---------------------------------------------------------------------------


def _flip_last_term(poly: StarPoly) -> StarPoly:
    word, coeff = poly.sorted_terms()[-1]
    return poly + StarPoly({word: -2 * coeff})


def build_ut4_mutant_items(spec: StarAlgebraSpec | None = None) -> list[tuple[str, str, str]]:
    """A spread sample of concrete identities, each with one term sign flipped.

    Every emitted mutant is re-verified to be a non-identity; candidates whose
    flip happens to stay an identity are skipped in favour of a neighbour.
    """
    if spec is None:
        spec = build_algebra(4, (0, 1, 0, 1), "super-symplectic")
    candidates: list[tuple[str, StarPoly]] = []
    for item_id, _, text in build_ut4_items():
        variants = parse_schema(text)
        for index, variant in enumerate(variants):
            if len(variant.sorted_terms()) < 2:
                continue
            name = item_id if len(variants) == 1 else f"{item_id}[{index}]"
            candidates.append((name, variant))
    step = len(candidates) / MUTANT_COUNT
    picked: list[tuple[str, str, str]] = []
    used: set[int] = set()
    for slot in range(MUTANT_COUNT):
        index = min(int(slot * step), len(candidates) - 1)
        while True:
            if index >= len(candidates):
                raise RuntimeError("ran out of mutant candidates")
            mutant = _flip_last_term(candidates[index][1])
            if index not in used and not is_identity(mutant, spec).is_identity:
                break
            index += 1
        used.add(index)
        name, _ = candidates[index]
        picked.append((f"{name}-flip", "not-identity", str(mutant)))
    return picked


# ---------------------------------------------------------------------------
# catalog 4: evaluation fixtures of total degree <= 6
# ---------------------------------------------------------------------------

_MAX_FIXTURE_DEGREE = 6

_ALTERNATING_EXPR = "e11 - e22 + e33 - e44"


def _prefix_assignments(a: int, b: int) -> tuple[list[str], list[str], int]:
    """Sym/skew prefix letters with their assignments; returns next free index."""
    letters = [f"y{i}+" for i in range(1, a + 1)]
    letters += [f"y{a + i}-" for i in range(1, b + 1)]
    assignments = [f"{v}=I" for v in letters[:a]]
    assignments += [f"{v}={_ALTERNATING_EXPR}" for v in letters[a:]]
    return letters, assignments, a + b + 1


def _fixture_line(
    item_id: str,
    factors: list[str],
    assignments: list[str],
    expected: str,
) -> tuple[str, str, str, str, str]:
    return (item_id, "evaluate", " ".join(factors), "; ".join(assignments), expected)


def _corner_value(lead_sign: int, mirror_sign: int) -> str:
    lead = "e13" if lead_sign > 0 else "-e13"
    mirror = " + e24" if mirror_sign > 0 else " - e24"
    return lead + mirror


def build_ut4_evaluation_items() -> list[tuple[str, str, str, str, str]]:
    items: list[tuple[str, str, str, str, str]] = []

    # plain products of symmetric then skew letters
    for a in range(_MAX_FIXTURE_DEGREE + 1):
        for b in range(_MAX_FIXTURE_DEGREE + 1 - a):
            if a + b == 0:
                continue
            letters = [f"y{i}+" for i in range(1, a + 1)]
            letters += [f"y{a + i}-" for i in range(1, b + 1)]
            assignments = [f"{v}=I" for v in letters[:a]]
            assignments += [f"{v}=e11 - e44" for v in letters[a:]]
            if b == 0:
                expected = "I"
            else:
                expected = "e11 + e44" if b % 2 == 0 else "e11 - e44"
            items.append(
                _fixture_line(f"prod-sym{a}-skew{b}", letters, assignments, expected)
            )

    # prefix times commutator led by a symmetric letter
    for a in range(_MAX_FIXTURE_DEGREE):
        for b in range(_MAX_FIXTURE_DEGREE - a):
            for c in range(1, _MAX_FIXTURE_DEGREE - a - b):
                for d in range(_MAX_FIXTURE_DEGREE - a - b - c):
                    prefix, assignments, nxt = _prefix_assignments(a, b)
                    lead = f"y{nxt}+"
                    tail_sym = [f"y{nxt + i}+" for i in range(1, c + 1)]
                    tail_skew = [f"y{nxt + c + i}-" for i in range(1, d + 1)]
                    assignments.append(f"{lead}=e13 + e24")
                    assignments += [f"{v}=e11 + e44" for v in tail_sym]
                    assignments += [f"{v}=e22 - e33" for v in tail_skew]
                    inner = ", ".join([lead] + tail_sym + tail_skew)
                    expected = _corner_value(
                        _sign_power(d) * _sign_power(c), _sign_power(d) * _sign_power(b)
                    )
                    items.append(
                        _fixture_line(
                            f"comm-symlead-sym{a}-skew{b}-c{c}-d{d}",
                            prefix + [f"[{inner}]"],
                            assignments,
                            expected,
                        )
                    )

    # prefix times commutator led by a skew letter
    for a in range(_MAX_FIXTURE_DEGREE):
        for b in range(_MAX_FIXTURE_DEGREE - a):
            for c in range(1, _MAX_FIXTURE_DEGREE - a - b):
                for d in range(_MAX_FIXTURE_DEGREE - a - b - c):
                    prefix, assignments, nxt = _prefix_assignments(a, b)
                    lead = f"y{nxt}-"
                    tail_skew = [f"y{nxt + i}-" for i in range(1, c + 1)]
                    tail_sym = [f"y{nxt + c + i}+" for i in range(1, d + 1)]
                    assignments.append(f"{lead}=e13 - e24")
                    assignments += [f"{v}=e11 - e44" for v in tail_skew]
                    assignments += [f"{v}=e22 + e33" for v in tail_sym]
                    inner = ", ".join([lead] + tail_skew + tail_sym)
                    expected = _corner_value(
                        _sign_power(c), _sign_power(c) * _sign_power(b + d + 1)
                    )
                    items.append(
                        _fixture_line(
                            f"comm-skewlead-sym{a}-skew{b}-c{c}-d{d}",
                            prefix + [f"[{inner}]"],
                            assignments,
                            expected,
                        )
                    )

    # prefix times commutator with the skew letters sandwiched between
    # a leading and trailing run of symmetric letters
    for a in range(_MAX_FIXTURE_DEGREE):
        for b in range(_MAX_FIXTURE_DEGREE - a):
            for c in range(1, _MAX_FIXTURE_DEGREE - a - b):
                for d in range(1, _MAX_FIXTURE_DEGREE - a - b - c):
                    prefix, assignments, nxt = _prefix_assignments(a, b)
                    lead = f"y{nxt}+"
                    mids = [f"y{nxt + i}-" for i in range(1, d + 1)]
                    tails = [f"y{nxt + d + i}+" for i in range(1, c)]
                    assignments.append(f"{lead}=e13 + e24")
                    assignments += [f"{v}=e11 - e44" for v in mids]
                    assignments += [f"{v}=e22 + e33" for v in tails]
                    inner = ", ".join([lead] + mids + tails)
                    expected = _corner_value(
                        _sign_power(d), _sign_power(d) * _sign_power(b + c - 1)
                    )
                    items.append(
                        _fixture_line(
                            f"comm-interleaved-sym{a}-skew{b}-c{c}-d{d}",
                            prefix + [f"[{inner}]"],
                            assignments,
                            expected,
                        )
                    )

    return items


# ---------------------------------------------------------------------------
# rendering and verification
# ---------------------------------------------------------------------------


def _render(
    catalog_id: str,
    spec_fields: tuple[int, str, str],
    comments: Sequence[str],
    items: Iterable[tuple[str, ...]],
) -> str:
    n, grading, kind = spec_fields
    lines = [f"# {comment}" for comment in comments]
    lines += [
        "catalog-format: 1",
        f"catalog-id: {catalog_id}",
        f"algebra-n: {n}",
        f"algebra-grading: {grading}",
        f"algebra-kind: {kind}",
        "---",
    ]
    lines += [" | ".join(fields) for fields in items]
    return "\n".join(lines) + "\n"


def render_all() -> dict[str, str]:
    """Render every catalog; keys are file names under ``utstar/catalogs``."""
    ut3 = _render(
        UT3_SUITE,
        (3, "010", "super-reflection"),
        (
            "defining identity list for 3x3 upper-triangular matrices,",
            "grading 010, super-reflection star map.",
            "unsigned variables (no trailing sign) expand to all signed",
            "variants; the sign-free lines below rely on that convention.",
        ),
        build_ut3_items(),
    )
    ut4 = _render(
        UT4_SUITE,
        (4, "0101", "super-symplectic"),
        (
            "bounded identity families for 4x4 upper-triangular matrices,",
            "grading 0101, super-symplectic star map.  Reorder families use",
            "word length k <= 4 at an odd boundary (permutations sampled at",
            "k = 4) and k <= 3 with all permutations elsewhere; every sign",
            "pattern is instantiated.",
        ),
        build_ut4_items(),
    )
    mutants = _render(
        UT4_MUTANT_SUITE,
        (4, "0101", "super-symplectic"),
        (
            "single-sign-flip mutants of the identity catalog; every line is",
            "expected to FAIL the identity check, with an explicit witness.",
        ),
        build_ut4_mutant_items(),
    )
    evaluations = _render(
        UT4_EVALUATION_SUITE,
        (4, "0101", "super-symplectic"),
        (
            "evaluation fixtures: product/commutator words of total degree",
            "<= 6 with distinguished component assignments and their exact",
            "values on 4x4 matrices, grading 0101, super-symplectic star map.",
        ),
        build_ut4_evaluation_items(),
    )
    return {
        f"{UT3_SUITE}.txt": ut3,
        f"{UT4_SUITE}.txt": ut4,
        f"{UT4_MUTANT_SUITE}.txt": mutants,
        f"{UT4_EVALUATION_SUITE}.txt": evaluations,
    }


def verify_catalogs() -> dict[str, int]:
    """Re-check every generated line semantically; returns per-catalog counts.

    Identity lines (schema-expanded) must pass the exact identity check,
    mutant lines must fail it, and evaluation lines must reproduce their
    stated matrix.  Raises ``AssertionError`` on the first violation.
    """
    ut3_spec = build_algebra(3, (0, 1, 0), "super-reflection")
    ut4_spec = build_algebra(4, (0, 1, 0, 1), "super-symplectic")
    counts: dict[str, int] = {}

    checked = 0
    for item_id, _, text in build_ut3_items():
        for variant in parse_schema(text):
            assert variant.is_zero() or is_identity(variant, ut3_spec).is_identity, item_id
            checked += 1
    counts[UT3_SUITE] = checked

    checked = 0
    for item_id, _, text in build_ut4_items():
        for variant in parse_schema(text):
            assert variant.is_zero() or is_identity(variant, ut4_spec).is_identity, item_id
            checked += 1
    counts[UT4_SUITE] = checked

    checked = 0
    for item_id, _, text in build_ut4_mutant_items(ut4_spec):
        assert not is_identity(parse_star_poly(text), ut4_spec).is_identity, item_id
        checked += 1
    counts[UT4_MUTANT_SUITE] = checked

    checked = 0
    for item_id, _, text, assignment_text, expected_text in build_ut4_evaluation_items():
        poly = parse_star_poly(text)
        assignment = parse_assignments(assignment_text, ut4_spec.n)
        expected = parse_mat_expr(expected_text, ut4_spec.n)
        value = substitute(poly, assignment, ut4_spec)
        assert value == expected, f"{item_id}: got {format_mat(value)}"
        checked += 1
    counts[UT4_EVALUATION_SUITE] = checked
    return counts


def parse_assignments(text: str, n: int) -> dict[VarSymbol, Mat]:
    """Parse ``y1+=I; y2-=e11 - e44`` style assignment lists."""
    assignment: dict[VarSymbol, Mat] = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        name, _, expr = chunk.partition("=")
        name = name.strip()
        if len(name) < 3 or name[0] not in "yz" or name[-1] not in "+-":
            raise ValueError(f"bad assignment variable {name!r}")
        if not name[1:-1].isdigit():
            raise ValueError(f"bad assignment variable {name!r}")
        var = VarSymbol(name[0], name[-1], int(name[1:-1]))
        if var in assignment:
            raise ValueError(f"variable {name} assigned twice")
        assignment[var] = parse_mat_expr(expr, n)
    return assignment
