"""Valuated matroids as concrete representative functions.

A representative is a complete map from the d-subsets of {0..n-1} to
tropical scalars whose finite support is the basis set of a matroid and
which satisfies the 3-term Plücker relations.  Equality in this package is
always at the representative level; `equivalent` tests equality up to one
global finite shift.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .bits import elements_of, full_mask, mask_of, popcount, subsets_of_size
from .errors import InputError, TheoremViolation
from .matroid import Matroid
from .trop import INF, TropScalar, TropVector, as_scalar


def check_pluecker_values(
    n: int, d: int, values: Mapping[int, TropScalar]
) -> tuple[bool, Optional[tuple[int, tuple[int, int, int, int]]]]:
    """Check the 3-term Plücker relations; on failure return (S, (i, j, k, l)).

    For every (d-2)-subset S and i < j < k < l outside S the minimum of
    the three pair products must be attained at least twice (an all-INF
    minimum passes vacuously).  Raises on missing entries.
    """
    universe = full_mask(n)
    if d < 2:
        return True, None
    for s_mask in subsets_of_size(universe, d - 2):
        rest = elements_of(universe & ~s_mask)
        for quad in _combinations4(rest):
            i, j, k, l = quad
            try:
                t1 = values[s_mask | mask_of((i, j))] + values[s_mask | mask_of((k, l))]
                t2 = values[s_mask | mask_of((i, k))] + values[s_mask | mask_of((j, l))]
                t3 = values[s_mask | mask_of((i, l))] + values[s_mask | mask_of((j, k))]
            except KeyError as exc:
                raise InputError(f"missing value for subset {exc}") from None
            m = min(t1, t2, t3)
            if m == INF:
                continue
            if (t1 == m) + (t2 == m) + (t3 == m) < 2:
                return False, (s_mask, quad)
    return True, None


def _combinations4(items: Sequence[int]):
    from itertools import combinations

    return combinations(items, 4)


class ValuatedMatroid:
    """A representative function on the d-subsets of an n-element ground set."""

    __slots__ = ("n", "d", "values", "_underlying")

    def __init__(self, n: int, d: int, values: Mapping[int, TropScalar]):
        if d < 0 or d > n:
            raise InputError(f"rank {d} out of range for ground set of size {n}")
        universe = full_mask(n)
        complete: dict[int, TropScalar] = {}
        for mask in subsets_of_size(universe, d):
            if mask not in values:
                raise InputError(f"missing value for subset {elements_of(mask)}")
            complete[mask] = as_scalar(values[mask])
        finite = [m for m, v in complete.items() if v != INF]
        if not finite:
            raise InputError("constant-INF function is not a valuated matroid")
        try:
            underlying = Matroid(n, finite)
        except InputError as exc:
            raise InputError(f"support is not a matroid: {exc}") from None
        ok, witness = check_pluecker_values(n, d, complete)
        if not ok:
            s_mask, quad = witness
            raise InputError(
                f"3-term relation fails at S={elements_of(s_mask)}, quad={quad}"
            )
        self.n = n
        self.d = d
        self.values = complete
        self._underlying = underlying

    @classmethod
    def trivial(cls, M: Matroid) -> "ValuatedMatroid":
        values = {m: (0 if M.is_basis(m) else INF) for m in subsets_of_size(full_mask(M.n), M.d)}
        return cls(M.n, M.d, values)

    def underlying(self) -> Matroid:
        return self._underlying

    def __repr__(self) -> str:
        finite = {elements_of(m): str(v) for m, v in sorted(self.values.items()) if v != INF}
        return f"ValuatedMatroid(n={self.n}, d={self.d}, {finite})"


def representatives_equal(a: ValuatedMatroid, b: ValuatedMatroid) -> bool:
    return a.n == b.n and a.d == b.d and a.values == b.values


def equivalent(a: ValuatedMatroid, b: ValuatedMatroid) -> bool:
    """True iff b = a + t for one global finite shift t."""
    if a.n != b.n or a.d != b.d:
        return False
    shift = None
    for mask, va in a.values.items():
        vb = b.values[mask]
        if (va == INF) != (vb == INF):
            return False
        if va == INF:
            continue
        delta = vb - va
        if shift is None:
            shift = delta
        elif delta != shift:
            return False
    return True


def shift_between(a: ValuatedMatroid, b: ValuatedMatroid) -> TropScalar:
    """The t with b = a + t; raises when the representatives are not equivalent."""
    if not equivalent(a, b):
        raise InputError("representatives are not a shift apart")
    for mask, va in a.values.items():
        if va != INF:
            return b.values[mask] - va
    raise InputError("no finite value")  # unreachable: constructor forbids


def vdelete(mu: ValuatedMatroid, subset: int) -> ValuatedMatroid:
    """Restrict the function to subsets avoiding `subset` (complement must span)."""
    if not any(b & subset == 0 for b in mu.underlying().bases):
        raise InputError("deletion would lower the rank: complement is not spanning")
    keep = [e for e in range(mu.n) if not subset & (1 << e)]
    pos = {e: i for i, e in enumerate(keep)}
    values = {
        mask_of(pos[e] for e in elements_of(m)): v
        for m, v in mu.values.items()
        if m & subset == 0
    }
    return ValuatedMatroid(len(keep), mu.d, values)


def vcontract(mu: ValuatedMatroid, subset: int) -> ValuatedMatroid:
    """Contract an independent set: B ↦ μ(B ∪ subset) on the remaining elements."""
    if not mu.underlying().is_independent(subset):
        raise InputError("contraction set must be independent in the underlying matroid")
    keep = [e for e in range(mu.n) if not subset & (1 << e)]
    pos = {e: i for i, e in enumerate(keep)}
    k = popcount(subset)
    values: dict[int, TropScalar] = {}
    for m in subsets_of_size(mask_of(keep), mu.d - k):
        values[mask_of(pos[e] for e in elements_of(m))] = mu.values[m | subset]
    return ValuatedMatroid(len(keep), mu.d - k, values)


def in_tropical_linear_space(
    mu: ValuatedMatroid, x: TropVector
) -> tuple[bool, Optional[int]]:
    """Membership test for Trop(μ); on failure returns the violating (d+1)-subset.

    The point may have INF coordinates.  A minimum of INF passes vacuously.
    """
    if len(x) != mu.n:
        raise InputError(f"point has {len(x)} coordinates, expected {mu.n}")
    if mu.d + 1 > mu.n:
        return True, None
    for t_mask in subsets_of_size(full_mask(mu.n), mu.d + 1):
        best: TropScalar = INF
        count = 0
        for i in elements_of(t_mask):
            xi = x[i]
            if xi == INF:
                continue
            v = mu.values[t_mask & ~(1 << i)]
            if v == INF:
                continue
            term = v + xi
            if term < best:
                best, count = term, 1
            elif term == best:
                count += 1
        if best != INF and count < 2:
            return False, t_mask
    return True, None


@dataclass(frozen=True)
class InitialMatroidResult:
    matroid: Matroid
    point: tuple
    min_value: TropScalar


def initial_matroid(mu: ValuatedMatroid, x: TropVector) -> InitialMatroidResult:
    """Matroid of the d-subsets minimizing μ_B + Σ_{i∈B} x_i at a finite point."""
    if len(x) != mu.n:
        raise InputError(f"point has {len(x)} coordinates, expected {mu.n}")
    if any(xi == INF for xi in x):
        raise InputError("initial matroid needs an all-finite point")
    best: TropScalar = INF
    argmin: list[int] = []
    for mask, v in mu.values.items():
        if v == INF:
            continue
        total = v + sum(x[i] for i in elements_of(mask))
        if total < best:
            best, argmin = total, [mask]
        elif total == best:
            argmin.append(mask)
    try:
        M = Matroid(mu.n, argmin)
    except InputError as exc:
        raise TheoremViolation(f"argmin of a valuated matroid is not a matroid: {exc}")
    return InitialMatroidResult(M, tuple(x), best)


def distinguished_matroid(mu: ValuatedMatroid, f_mask: int, y: Mapping[int, TropScalar]) -> Matroid:
    """Initial matroid of the contraction μ/F at a finite point y on E∖F.

    F must be a flat; y maps the elements outside F to finite scalars.  The
    bases are B∖F over bases B of the underlying matroid that meet F in a
    basis of F and minimize μ_B − Σ_{j∈B∖F} y_j.  (The subtraction is the
    polytope-subdivision pairing; adding y instead selects the wrong cell.)
    """
    under = mu.underlying()
    rf = under.rank(f_mask)
    best: TropScalar = INF
    argmin: set[int] = set()
    for mask, v in mu.values.items():
        if v == INF or popcount(mask & f_mask) != rf:
            continue
        total = v - sum(y[j] for j in elements_of(mask & ~f_mask))
        if total < best:
            best, argmin = total, {mask & ~f_mask}
        elif total == best:
            argmin.add(mask & ~f_mask)
    if not argmin:
        raise InputError("no basis meets the flat in a basis of the flat")
    keep = [e for e in range(mu.n) if not f_mask & (1 << e)]
    pos = {e: i for i, e in enumerate(keep)}
    relabeled = [mask_of(pos[e] for e in elements_of(m)) for m in argmin]
    try:
        return Matroid(len(keep), relabeled)
    except InputError as exc:
        raise TheoremViolation(f"distinguished matroid is not a matroid: {exc}")
