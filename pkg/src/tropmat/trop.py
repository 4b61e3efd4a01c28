"""The min-plus (tropical) semifield over exact rationals.

A scalar is either a ``fractions.Fraction`` or the single float ``INF``
(positive infinity).  Tropical addition is ``min`` and tropical
multiplication is ordinary ``+``; both are the builtin operations, which
Python already evaluates exactly on this mixed representation:
``Fraction + INF == INF`` and ``min(Fraction, INF)`` picks the fraction.
No other floats are ever allowed, so every finite computation stays in ℚ.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

from .errors import InputError

INF: float = float("inf")

TropScalar = Union[Fraction, float]

ZERO = Fraction(0)


def is_inf(a: TropScalar) -> bool:
    return a == INF


def is_finite(a: TropScalar) -> bool:
    return a != INF


def trop_add(a: TropScalar, b: TropScalar) -> TropScalar:
    """Tropical sum: min(a, b).  INF is the identity."""
    return a if a <= b else b


def trop_mul(a: TropScalar, b: TropScalar) -> TropScalar:
    """Tropical product: a + b.  INF is absorbing."""
    if a == INF or b == INF:
        return INF
    return a + b


def trop_sum(items: Iterable[TropScalar]) -> TropScalar:
    """min over the items; INF on an empty iterable."""
    best: TropScalar = INF
    for a in items:
        if a < best:
            best = a
    return best


def trop_product(items: Iterable[TropScalar]) -> TropScalar:
    """Ordinary sum of the items; 0 (the tropical unit) on an empty iterable."""
    total: TropScalar = ZERO
    for a in items:
        if a == INF:
            return INF
        total += a
    return total


def as_scalar(value) -> TropScalar:
    """Coerce ints/Fractions/INF to a scalar; reject other floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if value == INF:
            return INF
        raise InputError(f"non-infinite float {value!r} is not an exact scalar")
    raise InputError(f"cannot interpret {value!r} as a tropical scalar")


def parse_scalar(text: str) -> TropScalar:
    """Parse 'p/q', decimal, or 'inf'."""
    s = text.strip()
    if s == "inf":
        return INF
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad scalar {text!r}: {exc}") from None


def format_scalar(a: TropScalar) -> str:
    """Canonical wire form: 'p/q' (or plain integer) for rationals, 'inf' for INF."""
    if a == INF:
        return "inf"
    return str(a)


TropVector = tuple  # tuple[TropScalar, ...]; alias for signatures


def support_mask(vec: Iterable[TropScalar]) -> int:
    """Bitmask of the finite positions of a vector."""
    m = 0
    for i, a in enumerate(vec):
        if a != INF:
            m |= 1 << i
    return m


def unit_bump(n: int, j: int, amount: TropScalar) -> tuple:
    """The vector that is `amount` at position j and 0 elsewhere."""
    return tuple(amount if i == j else ZERO for i in range(n))
