"""Tropical matrices and their min-plus minors.

A tropical minor on row set I and column set J (|I| = |J|) is the minimum
over bijections φ: J → I of the ordinary sum of the selected entries — a
min-plus permanent.  Minors up to size 6 are computed by enumerating all
permutations; larger ones fall back to the exact assignment solver, which
the tests pin against the enumerator.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterable, Sequence

from .assignment import min_assignment
from .bits import check_ground, elements_of, full_mask, subsets_of_size
from .errors import InputError
from .trop import INF, ZERO, TropScalar, as_scalar, format_scalar, parse_scalar, support_mask

ENUMERATION_LIMIT = 6


class TropMatrix:
    """Immutable d x n matrix over the min-plus semifield."""

    __slots__ = ("rows", "d", "n")

    def __init__(self, rows: Iterable[Iterable[TropScalar]]):
        rows = tuple(tuple(as_scalar(a) for a in row) for row in rows)
        if not rows:
            raise InputError("matrix needs at least one row")
        n = len(rows[0])
        if any(len(row) != n for row in rows):
            raise InputError("all rows must have the same length")
        if n == 0:
            raise InputError("matrix needs at least one column")
        check_ground(n)
        self.rows = rows
        self.d = len(rows)
        self.n = n

    @classmethod
    def from_strings(cls, rows: Iterable[Iterable[str]]) -> "TropMatrix":
        return cls([[parse_scalar(s) for s in row] for row in rows])

    def to_strings(self) -> list[list[str]]:
        return [[format_scalar(a) for a in row] for row in self.rows]

    def row_support(self, i: int) -> int:
        return support_mask(self.rows[i])

    def column(self, j: int) -> tuple[TropScalar, ...]:
        return tuple(row[j] for row in self.rows)

    def minor(self, row_idxs: Sequence[int], col_idxs: Sequence[int]) -> TropScalar:
        return tropical_minor(self, row_idxs, col_idxs)

    def __eq__(self, other) -> bool:
        return isinstance(other, TropMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_scalar(a) for a in row) for row in self.rows)
        return f"TropMatrix[{body}]"


def tropical_minor(A: TropMatrix, row_idxs: Sequence[int], col_idxs: Sequence[int]) -> TropScalar:
    """Min over bijections cols -> rows of the entry sum; INF if none is finite."""
    rows = tuple(row_idxs)
    cols = tuple(col_idxs)
    if len(rows) != len(cols):
        raise InputError("non-square minor")
    k = len(rows)
    if k == 0:
        return ZERO
    if k <= ENUMERATION_LIMIT:
        best: TropScalar = INF
        data = A.rows
        for perm in permutations(rows):
            total: TropScalar = ZERO
            for r, c in zip(perm, cols):
                entry = data[r][c]
                if entry == INF:
                    break
                total += entry
            else:
                if total < best:
                    best = total
        return best
    cost = [[A.rows[r][c] for c in cols] for r in rows]
    return min_assignment(cost)


def all_maximal_minors(A: TropMatrix) -> dict[int, TropScalar]:
    """Map each d-subset of columns (as a bitmask) to its maximal minor."""
    if A.d > A.n:
        raise InputError(f"d={A.d} exceeds n={A.n}: no maximal minors")
    row_idxs = tuple(range(A.d))
    out: dict[int, TropScalar] = {}
    for mask in subsets_of_size(full_mask(A.n), A.d):
        out[mask] = tropical_minor(A, row_idxs, elements_of(mask))
    return out
