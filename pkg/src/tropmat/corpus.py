"""Seeded random instance generation for the verification suites.

Every generator takes an explicit ``random.Random`` or an integer seed and
derives per-instance integer sub-seeds from the master stream, so reports
are byte-reproducible for a fixed (spec, seed) pair.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InputError
from .matrix import TropMatrix
from .matroid import transversal_from_system
from .presentation import Presentation
from .trop import INF, TropScalar, support_mask

DEFAULT_GRID: tuple[Fraction, ...] = (
    Fraction(-2),
    Fraction(-1),
    Fraction(-1, 2),
    Fraction(0),
    Fraction(1, 2),
    Fraction(1),
    Fraction(2),
)


@dataclass(frozen=True)
class CorpusSpec:
    n: int
    d: int
    count: int
    seed: int
    inf_probability: Fraction = Fraction(1, 4)
    value_grid: tuple[Fraction, ...] = DEFAULT_GRID

    def __post_init__(self):
        if not 1 <= self.d <= self.n:
            raise InputError(f"need 1 <= d <= n, got d={self.d}, n={self.n}")
        if self.n > 8:
            raise InputError("corpus ground sets are capped at 8 elements")
        if not 0 <= self.inf_probability <= 1:
            raise InputError("inf_probability must lie in [0, 1]")
        if not self.value_grid:
            raise InputError("value grid must be nonempty")


def _rand_entry(rng: random.Random, grid: Sequence[TropScalar], p: Fraction) -> TropScalar:
    if p > 0 and rng.randrange(p.denominator) < p.numerator:
        return INF
    return grid[rng.randrange(len(grid))]


def gen_matrix(
    rng: random.Random,
    d: int,
    n: int,
    grid: Sequence[TropScalar] = DEFAULT_GRID,
    inf_probability: Fraction = Fraction(1, 4),
) -> TropMatrix:
    """A d x n matrix with no all-INF row and at least one finite maximal minor."""
    while True:
        rows = [
            tuple(_rand_entry(rng, grid, inf_probability) for _ in range(n)) for _ in range(d)
        ]
        if any(support_mask(row) == 0 for row in rows):
            continue
        supports = [support_mask(row) for row in rows]
        if transversal_from_system(supports, n) is None:
            continue
        return TropMatrix(rows)


def corpus_presentations(spec: CorpusSpec) -> list[tuple[int, Presentation]]:
    """(instance seed, presentation) pairs for the spec, deterministically."""
    master = random.Random(spec.seed)
    out = []
    for _ in range(spec.count):
        sub_seed = master.getrandbits(48)
        rng = random.Random(sub_seed)
        A = gen_matrix(rng, spec.d, spec.n, spec.value_grid, spec.inf_probability)
        out.append((sub_seed, Presentation(A)))
    return out
