"""Classical matroids on small ground sets, plus transversal presentations.

Everything is desk scale by design: ground sets are bitmasks capped at 16
elements and all derived families (flats, circuits, cyclic flats) are
produced by brute force over subsets.  Bases are validated against the
exchange axiom on construction, so an invalid basis list fails fast.

A set system is a list of subset bitmasks; as a presentation of a
transversal matroid it is a multiset (row order never matters, row
multiplicity does), but we keep it row-aligned so refinements can preserve
per-row constraints.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence

from .bits import check_ground, elements_of, full_mask, mask_of, popcount, subsets_of_size
from .errors import InputError, TheoremViolation


class Matroid:
    """Ground set {0..n-1} with an explicit basis list (bitmasks) of rank d."""

    __slots__ = ("n", "d", "bases", "_basis_set")

    def __init__(self, n: int, bases: Sequence[int]):
        check_ground(n)
        basis_list = sorted(set(bases))
        if not basis_list:
            raise InputError("matroid needs at least one basis")
        universe = full_mask(n)
        d = popcount(basis_list[0])
        for b in basis_list:
            if b & ~universe:
                raise InputError(f"basis {elements_of(b)} outside ground set of size {n}")
            if popcount(b) != d:
                raise InputError("bases must all have the same size")
        self.n = n
        self.d = d
        self.bases = tuple(basis_list)
        self._basis_set = frozenset(basis_list)
        self._check_exchange()

    def _check_exchange(self) -> None:
        bases = self.bases
        bset = self._basis_set
        for a in bases:
            for b in bases:
                diff = a & ~b
                if not diff:
                    continue
                for e in elements_of(diff):
                    rest = a & ~(1 << e)
                    for f in elements_of(b & ~a):
                        if rest | (1 << f) in bset:
                            break
                    else:
                        raise InputError(
                            f"basis exchange fails for {elements_of(a)}, {elements_of(b)} at {e}"
                        )

    @classmethod
    def uniform(cls, d: int, n: int) -> "Matroid":
        return cls(n, list(subsets_of_size(full_mask(n), d)))

    def is_basis(self, mask: int) -> bool:
        return mask in self._basis_set

    def rank(self, subset: int) -> int:
        """Max |S ∩ B| over bases B."""
        return max(popcount(subset & b) for b in self.bases)

    def corank(self, subset: int) -> int:
        return self.d - self.rank(subset)

    def is_independent(self, subset: int) -> bool:
        return self.rank(subset) == popcount(subset)

    def closure(self, subset: int) -> int:
        r = self.rank(subset)
        cl = subset
        for e in range(self.n):
            b = 1 << e
            if not subset & b and self.rank(subset | b) == r:
                cl |= b
        return cl

    def is_flat(self, subset: int) -> bool:
        return self.closure(subset) == subset

    def loops(self) -> int:
        return self.closure(0)

    def coloops(self) -> int:
        out = full_mask(self.n)
        for b in self.bases:
            out &= b
        return out

    def ground(self) -> int:
        return full_mask(self.n)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matroid) and self.n == other.n and self.bases == other.bases

    def __hash__(self) -> int:
        return hash((self.n, self.bases))

    def __repr__(self) -> str:
        return f"Matroid(n={self.n}, bases={[elements_of(b) for b in self.bases]})"


@lru_cache(maxsize=4096)
def flats(M: Matroid) -> tuple[int, ...]:
    return tuple(s for s in range(1 << M.n) if M.is_flat(s))


def hyperplanes(M: Matroid) -> tuple[int, ...]:
    return tuple(f for f in flats(M) if M.rank(f) == M.d - 1)


def cocircuits(M: Matroid) -> tuple[int, ...]:
    """Complements of hyperplanes, sorted."""
    g = M.ground()
    return tuple(sorted(g & ~h for h in hyperplanes(M)))


@lru_cache(maxsize=4096)
def circuits(M: Matroid) -> tuple[int, ...]:
    out = []
    for s in range(1, 1 << M.n):
        if M.is_independent(s):
            continue
        if all(M.is_independent(s & ~(1 << e)) for e in elements_of(s)):
            out.append(s)
    return tuple(sorted(out))


def loops(M: Matroid) -> tuple[int, ...]:
    return elements_of(M.loops())


def coloops(M: Matroid) -> tuple[int, ...]:
    return elements_of(M.coloops())


def restriction_coloops(M: Matroid, subset: int) -> int:
    """Coloops of the restriction M|subset, as a mask."""
    r = M.rank(subset)
    out = 0
    for e in elements_of(subset):
        if M.rank(subset & ~(1 << e)) == r - 1:
            out |= 1 << e
    return out


class CyclicFlatLattice:
    """Cyclic flats of a matroid with Möbius values from the bottom element.

    The bottom is the set of loops (the unique minimal cyclic flat); the
    Möbius values satisfy sum_{F' <= F} moebius[F'] == (1 if F == bottom else 0).
    """

    __slots__ = ("flats", "bottom", "moebius")

    def __init__(self, flats_list: Sequence[int], bottom: int, moebius: dict[int, int]):
        self.flats = tuple(sorted(flats_list))
        self.bottom = bottom
        self.moebius = dict(moebius)


@lru_cache(maxsize=4096)
def cyclic_flats(M: Matroid) -> CyclicFlatLattice:
    """All flats whose restriction has no coloops, with Möbius values."""
    cyclic = []
    for f in flats(M):
        if restriction_coloops(M, f) == 0:
            cyclic.append(f)
    bottom = M.loops()
    order = sorted(cyclic, key=popcount)
    moebius: dict[int, int] = {}
    for f in order:
        if f == bottom:
            moebius[f] = 1
            continue
        total = sum(moebius[g] for g in order if g != f and g & ~f == 0 and g in moebius)
        moebius[f] = -total
    return CyclicFlatLattice(cyclic, bottom, moebius)


def t_of(M: Matroid) -> int:
    """Möbius-weighted corank sum over cyclic flats; 0 when M has loops."""
    if M.loops():
        return 0
    lattice = cyclic_flats(M)
    total = sum(lattice.moebius[f] * M.corank(f) for f in lattice.flats)
    if total < 0:
        raise TheoremViolation("t(M) < 0: input not in the guaranteed regime")
    return total


def deletion(M: Matroid, subset: int) -> Matroid:
    """Delete `subset`; requires the complement to be spanning."""
    kept = [b for b in M.bases if b & subset == 0]
    if not kept:
        raise InputError("deletion would lower the rank: complement is not spanning")
    return _relabel(M.n, subset, kept)


def contraction(M: Matroid, subset: int) -> Matroid:
    """Contract an independent `subset`."""
    if not M.is_independent(subset):
        raise InputError("contraction set must be independent")
    kept = [b & ~subset for b in M.bases if b & subset == subset]
    if not kept:
        raise TheoremViolation("independent set missing from every basis")
    return _relabel(M.n, subset, kept)


def _relabel(n: int, removed: int, masks: Sequence[int]) -> Matroid:
    keep = [e for e in range(n) if not removed & (1 << e)]
    pos = {e: i for i, e in enumerate(keep)}
    relabeled = [mask_of(pos[e] for e in elements_of(m)) for m in masks]
    return Matroid(len(keep), relabeled)


def direct_sum(M: Matroid, N: Matroid) -> Matroid:
    bases = [bm | (bn << M.n) for bm in M.bases for bn in N.bases]
    return Matroid(M.n + N.n, bases)


def weak_order_leq(M: Matroid, N: Matroid) -> bool:
    """True iff every basis of M is a basis of N (same ground set and rank)."""
    if M.n != N.n or M.d != N.d:
        raise InputError("weak order needs equal ground sets and ranks")
    return set(M.bases) <= set(N.bases)


# ---------------------------------------------------------------------------
# Transversal presentations (set systems)


def _has_transversal(sets: Sequence[int], target: int) -> bool:
    """Perfect matching of the elements of `target` into the rows containing them."""
    elems = elements_of(target)
    if len(elems) != len(sets):
        return False
    match_row: list[Optional[int]] = [None] * len(sets)

    def augment(e: int, seen: set[int]) -> bool:
        for i, row in enumerate(sets):
            if i in seen or not row & (1 << e):
                continue
            seen.add(i)
            if match_row[i] is None or augment(match_row[i], seen):
                match_row[i] = e
                return True
        return False

    return all(augment(e, set()) for e in elems)


def transversal_from_system(sets: Sequence[int], n: int) -> Optional[Matroid]:
    """Matroid whose bases are the d-subsets with a perfect matching into `sets`.

    Returns None when no d-subset has a system of distinct representatives.
    """
    check_ground(n)
    d = len(sets)
    if d == 0:
        raise InputError("set system needs at least one row")
    bases = [b for b in subsets_of_size(full_mask(n), d) if _has_transversal(sets, b)]
    if not bases:
        return None
    return Matroid(n, bases)


def presents(sets: Sequence[int], M: Matroid) -> bool:
    got = transversal_from_system(sets, M.n)
    return got is not None and got == M


def maximal_presentation(M: Matroid, sets: Sequence[int]) -> list[int]:
    """The unique maximal presentation, grown greedily and verified.

    Each row is enlarged by every element whose insertion keeps the
    transversal matroid equal to M; the fixpoint is checked against the
    closed form (row + coloops of the restriction to its complement).
    """
    if not presents(sets, M):
        raise InputError("set system does not present the matroid")
    rows = list(sets)
    g = M.ground()
    changed = True
    while changed:
        changed = False
        for i in range(len(rows)):
            for e in elements_of(g & ~rows[i]):
                candidate = rows[:]
                candidate[i] = rows[i] | (1 << e)
                if presents(candidate, M):
                    rows[i] |= 1 << e
                    changed = True
    closed_form = [s | restriction_coloops(M, g & ~s) for s in sets]
    if sorted(rows) != sorted(closed_form):
        raise TheoremViolation("greedy maximal presentation disagrees with the coloop rule")
    return rows


def maximal_presentation_of(M: Matroid) -> list[int]:
    """Maximal presentation built from the cyclic flats of M directly.

    Rows are the complements of cyclic flats F, each with multiplicity
    t(M/F); the result is verified to present M.
    """
    g = M.ground()
    rows: list[int] = []
    for f in cyclic_flats(M).flats:
        if f == g:
            continue
        quotient = _contract_by_any(M, f)
        mult = t_of(quotient)
        rows.extend([g & ~f] * mult)
    if len(rows) != M.d or not presents(rows, M):
        raise TheoremViolation("cyclic-flat maximal presentation failed verification")
    return sorted(rows)


def _contract_by_any(M: Matroid, subset: int) -> Matroid:
    """Contraction by an arbitrary set: bases are B ⊆ E∖S with B ∪ (basis of S) a basis."""
    r = M.rank(subset)
    kept = sorted({b & ~subset for b in M.bases if popcount(b & subset) == r})
    return _relabel(M.n, subset, kept)


def minimal_refinement(
    M: Matroid,
    sets: Sequence[int],
    keep: Optional[int] = None,
    rng=None,
) -> list[int]:
    """Shrink rows greedily until no single element can be removed.

    Rows are visited round-robin; within a row, candidate elements are
    probed in ascending order (or shuffled when `rng` is given).  When
    `keep` is an element, its membership per row is never changed.  The
    result has every row a cocircuit of M and still presents M.
    """
    if not presents(sets, M):
        raise InputError("set system does not present the matroid")
    rows = list(sets)
    protected = 0 if keep is None else (1 << keep)
    changed = True
    while changed:
        changed = False
        row_order = list(range(len(rows)))
        if rng is not None:
            rng.shuffle(row_order)
        for i in row_order:
            candidates = list(elements_of(rows[i] & ~protected))
            if rng is not None:
                rng.shuffle(candidates)
            for e in candidates:
                candidate = rows[:]
                candidate[i] = rows[i] & ~(1 << e)
                if candidate[i] and presents(candidate, M):
                    rows[i] &= ~(1 << e)
                    changed = True
                    break
    cocircuit_set = set(cocircuits(M))
    if any(row not in cocircuit_set for row in rows):
        raise TheoremViolation("greedy refinement stalled on a non-cocircuit row")
    return rows


def contained_in_presentation(M: Matroid, parts: Sequence[int]) -> bool:
    """Is the multiset of subsets contained (rowwise) in some presentation of M?

    Searches injective placements of the parts into the maximal
    presentation and completes with the untouched maximal rows; transversal
    systems are monotone in rowwise containment, so any completion that
    still presents M certifies containment.
    """
    maxpres = maximal_presentation_of(M)
    k = len(parts)
    if k > len(maxpres):
        return False

    slots = list(range(len(maxpres)))

    def search(idx: int, used: int) -> bool:
        if idx == k:
            candidate = [
                parts[assignment[s]] if assignment.get(s) is not None else maxpres[s]
                for s in slots
            ]
            return presents(candidate, M)
        part = parts[idx]
        for s in slots:
            if used & (1 << s):
                continue
            if part & ~maxpres[s]:
                continue
            assignment[s] = idx
            if search(idx + 1, used | (1 << s)):
                return True
            del assignment[s]
        return False

    assignment: dict[int, int] = {}
    return search(0, 0)


@lru_cache(maxsize=4096)
def connected_components(M: Matroid) -> tuple[int, ...]:
    """Connected components as masks: elements sharing a circuit are joined.

    Loops and coloops are singleton components.
    """
    parent = list(range(M.n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for circ in circuits(M):
        es = elements_of(circ)
        for e in es[1:]:
            ra, rb = find(es[0]), find(e)
            if ra != rb:
                parent[rb] = ra
    groups: dict[int, int] = {}
    for e in range(M.n):
        r = find(e)
        groups[r] = groups.get(r, 0) | (1 << e)
    return tuple(sorted(groups.values()))


def restriction_bases(M: Matroid, subset: int) -> list[int]:
    """Bases of M restricted to `subset` (masks within the original labels)."""
    r = M.rank(subset)
    if r == 0:
        return [0]
    out = []
    for cand in subsets_of_size(subset, r):
        if M.is_independent(cand):
            out.append(cand)
    return sorted(out)
