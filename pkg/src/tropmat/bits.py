"""Bitmask subsets of a ground set {0, ..., n-1}.

Subsets are plain ints; element e corresponds to bit 1 << e.  Ground sets
are capped at 16 elements: everything downstream enumerates over 2^n.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

from .errors import InputError

MAX_GROUND = 16


def bit(e: int) -> int:
    return 1 << e


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return mask.bit_count()


def subsets_of_size(universe_mask: int, k: int) -> Iterator[int]:
    """All k-subsets of the given universe, ascending as bitmasks of sorted tuples."""
    for combo in combinations(elements_of(universe_mask), k):
        yield mask_of(combo)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def check_ground(n: int) -> None:
    if not 0 <= n <= MAX_GROUND:
        raise InputError(f"ground set size {n} out of range 0..{MAX_GROUND}")
