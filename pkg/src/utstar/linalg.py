"""Exact linear algebra over the rationals.

Three tools, all fraction-exact:

* ``matrix_rank`` — rank of a dense rational matrix via the Bareiss
  fraction-free elimination (rows are scaled to integers first, so all
  intermediate values are integers and every division is exact).
* ``linear_solve`` — one solution of A x = b by Gauss-Jordan over Fraction,
  or None when the system is inconsistent.  Free variables are set to 0.
* ``RowReducer`` — incremental rank of a stream of sparse rows keyed by
  arbitrary sortable column ids; used where the full matrix would be large
  but its rank is small.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Hashable, Mapping, Sequence

Scalar = Fraction

RowLike = Sequence[Fraction | int]


def _check_rectangular(rows: Sequence[RowLike]) -> int:
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise ValueError(f"ragged matrix: row lengths {sorted(widths)}")
    return widths.pop() if widths else 0


def _integer_row(row: RowLike) -> list[int]:
    fracs = [Fraction(x) for x in row]
    scale = lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * scale) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def matrix_rank(rows: Sequence[RowLike]) -> int:
    """Rank of the matrix given as a sequence of equal-length rows.

    Raises ValueError if the rows do not all have the same length.
    """
    ncols = _check_rectangular(rows)
    m = [_integer_row(r) for r in rows]
    nrows = len(m)
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((i for i in range(rank, nrows) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        lead = m[rank][col]
        row_r = m[rank]
        for i in range(rank + 1, nrows):
            head = m[i][col]
            row_i = m[i]
            for j in range(col + 1, ncols):
                row_i[j] = (lead * row_i[j] - head * row_r[j]) // prev
            row_i[col] = 0
        prev = lead
        rank += 1
        if rank == nrows:
            break
    return rank


def linear_solve(
    rows: Sequence[RowLike], rhs: Sequence[Fraction | int]
) -> list[Fraction] | None:
    """One exact solution x of A x = b, or None if none exists.

    When the system is underdetermined the free variables are set to zero,
    so the answer is deterministic.
    """
    ncols = _check_rectangular(rows)
    if len(rhs) != len(rows):
        raise ValueError(f"need {len(rows)} right-hand sides, got {len(rhs)}")
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    nrows = len(aug)
    pivots: list[tuple[int, int]] = []  # (reduced row index, column)
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if aug[i][c]), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols]:
            return None
    x = [Fraction(0)] * ncols
    for row, col in pivots:
        x[col] = aug[row][ncols]
    return x


class RowReducer:
    """Incremental rank of sparse rational rows.

    Rows are mappings from a sortable column id to a coefficient.  Each
    accepted row is reduced against the stored pivot rows; it is kept (and
    the rank grows) exactly when something nonzero survives.
    """

    def __init__(self) -> None:
        self._pivots: dict[Hashable, dict[Hashable, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def add(self, row: Mapping[Hashable, Fraction | int]) -> bool:
        """Fold one row in; True if it was independent of the rows so far."""
        work = {c: Fraction(v) for c, v in row.items() if v}
        while work:
            lead = min(work)  # type: ignore[type-var]
            pivot = self._pivots.get(lead)
            if pivot is None:
                inv = 1 / work[lead]
                self._pivots[lead] = {c: v * inv for c, v in work.items()}
                return True
            f = work.pop(lead)
            for c, v in pivot.items():
                if c == lead:
                    continue
                s = work.get(c, Fraction(0)) - f * v
                if s:
                    work[c] = s
                else:
                    work.pop(c, None)
        return False
