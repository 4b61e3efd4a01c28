"""Single-element extensions obtained by appending a column to a presentation.

Appending a column x to a d x n presentation of mu yields a valuated
matroid on the ground set extended by a new element `*` (internally the
index n).  The subsets avoiding * keep mu's representative verbatim, which
anchors a canonical representative for every extension of a fixed mu and
makes extensions comparable coordinatewise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .bits import elements_of, full_mask, mask_of, popcount, subsets_of_size
from .errors import InputError, TheoremViolation
from .matrix import TropMatrix, tropical_minor
from .matroid import hyperplanes, restriction_bases
from .presentation import Presentation, is_minimal, minimize
from .trop import INF, ZERO, TropScalar, support_mask
from .valuated import ValuatedMatroid, representatives_equal, vdelete


@dataclass(frozen=True)
class NormalizedExtension:
    """An extension whose *-free values equal the base representative exactly."""

    ext: ValuatedMatroid
    base: ValuatedMatroid

    @property
    def star(self) -> int:
        return self.base.n

    def values(self) -> dict[int, TropScalar]:
        return self.ext.values


@dataclass(frozen=True)
class CertificateBasis:
    """A d-subset B_i containing * whose every matching routes * to row i.

    Consequently Stiefel(A|x)_{B_i} = a_i + x_i for all x, so x_i can be
    read back off the extension.
    """

    row: int
    subset: int  # mask over n+1 elements, * bit included
    a: TropScalar


def extension_values(pres: Presentation, x: Sequence[TropScalar]) -> dict[int, TropScalar]:
    """Representative of Stiefel(A|x) on the extended ground set, * = index n.

    The *-free values are mu's; a *-containing minor over J ∪ {*} is
    min_i (minor(A without row i, J) + x_i).
    """
    if len(x) != pres.d:
        raise InputError(f"column has {len(x)} entries, expected {pres.d}")
    n, d = pres.n, pres.d
    star_bit = 1 << n
    values: dict[int, TropScalar] = dict(pres.mu.values)
    table = pres.reduced_minors()
    for j_mask, minors in table.items():
        best: TropScalar = INF
        for i in range(d):
            if x[i] == INF or minors[i] == INF:
                continue
            term = minors[i] + x[i]
            if term < best:
                best = term
        values[j_mask | star_bit] = best
    return values


def extend(
    pres: Presentation, x: Sequence[TropScalar], verify: bool = True
) -> NormalizedExtension:
    """Stiefel(A|x) as a normalized extension of the presented mu.

    With verify=True every *-containing value is recomputed as a direct
    tropical minor of the extended matrix and compared exactly.
    """
    values = extension_values(pres, x)
    n, d = pres.n, pres.d
    star_bit = 1 << n
    if verify:
        ext_matrix = TropMatrix([row + (x[i],) for i, row in enumerate(pres.matrix.rows)])
        row_idx = tuple(range(d))
        for j_mask in subsets_of_size(full_mask(n), d - 1):
            direct = tropical_minor(ext_matrix, row_idx, elements_of(j_mask) + (n,))
            if direct != values[j_mask | star_bit]:
                raise TheoremViolation("column formula disagrees with the direct minor")
    if all(v == INF for v in values.values()):
        raise InputError("extension is constant INF")
    ext = ValuatedMatroid(n + 1, d, values)
    return NormalizedExtension(ext=ext, base=pres.mu)


def extended_presentation(pres: Presentation, x: Sequence[TropScalar]) -> Presentation:
    """The (A|x) matrix as a presentation on n+1 columns."""
    return Presentation(TropMatrix([row + (x[i],) for i, row in enumerate(pres.matrix.rows)]))


def certificate_bases(pres: Presentation) -> list[CertificateBasis]:
    """Recovery certificates for a minimal presentation.

    For each row i: H_i is the part of the distinguished ground set outside
    the row's support (a hyperplane of the distinguished matroid), J_i the
    lexicographically least basis of the underlying matroid restricted to
    the complementary cyclic flat; B_i = J_i ∪ H_i ∪ {*}.  Every matching
    of B_i routes * to row i, which is verified here.
    """
    if not is_minimal(pres):
        raise InputError("certificate bases need a minimal presentation")
    dec = pres.decomposition()
    n, d = pres.n, pres.d
    star_bit = 1 << n
    table = pres.reduced_minors()
    out = []
    for i, row in enumerate(dec.rows):
        ground_mask = mask_of(row.ground)
        h_mask = ground_mask & ~support_mask(pres.matrix.rows[i])
        f_mask = full_mask(n) & ~ground_mask
        under = pres.mu.underlying()
        j_mask = min(restriction_bases(under, f_mask), key=elements_of)
        b_mask = j_mask | h_mask
        if popcount(b_mask) != d - 1:
            raise TheoremViolation("certificate subset has the wrong size")
        minors = table[b_mask]
        for r in range(d):
            if r == i:
                if minors[r] == INF:
                    raise TheoremViolation("certificate minor through its own row is INF")
            elif minors[r] != INF:
                raise TheoremViolation("certificate subset admits a matching avoiding its row")
        out.append(CertificateBasis(row=i, subset=b_mask | star_bit, a=minors[i]))
    return out


DEFAULT_GRID = (
    Fraction(-2),
    Fraction(-1),
    Fraction(-1, 2),
    Fraction(0),
    Fraction(1, 2),
    Fraction(1),
    Fraction(2),
)


def sample_column(
    rng: random.Random, d: int, grid: Sequence[TropScalar] = DEFAULT_GRID
) -> tuple[TropScalar, ...]:
    """Random extension column: INF with probability 1/(d+2), else a grid value."""
    out = []
    for _ in range(d):
        if rng.randrange(d + 2) == 0:
            out.append(INF)
        else:
            out.append(grid[rng.randrange(len(grid))])
    return tuple(out)


@dataclass(frozen=True)
class InjectivityVerdict:
    verdict: str  # "INJECTIVE" | "COLLISION"
    certificates: Optional[list] = None
    collision: Optional[tuple] = None  # (row, x, y)


def nonminimal_collision(pres: Presentation) -> tuple[int, tuple, tuple]:
    """Two distinct columns with equal extensions, built by stabilization.

    Picks a row whose support complement (inside its distinguished ground
    set) is not a hyperplane; along x_t = t·e_i every *-minor is
    min(a + t, b), and no minor has finite a with b = INF, so the extension
    stabilizes past the largest b - a.
    """
    if is_minimal(pres):
        raise InputError("collision needs a non-minimal presentation")
    dec = pres.decomposition()
    n, d = pres.n, pres.d
    bad_row = None
    for i, row in enumerate(dec.rows):
        ground_mask = mask_of(row.ground)
        missing = ground_mask & ~support_mask(pres.matrix.rows[i])
        pos = {e: k for k, e in enumerate(row.ground)}
        missing_rel = mask_of(pos[e] for e in elements_of(missing))
        if missing_rel not in set(hyperplanes(row.matroid)):
            bad_row = i
            break
    if bad_row is None:
        raise TheoremViolation("non-minimal presentation with no violating row")
    table = pres.reduced_minors()
    threshold: TropScalar = ZERO
    for j_mask, minors in table.items():
        a = minors[bad_row]
        b: TropScalar = INF
        for r in range(d):
            if r != bad_row and minors[r] < b:
                b = minors[r]
        if a != INF and b == INF:
            raise TheoremViolation("a *-minor grows with t unboundedly: contradicts stabilization")
        if a != INF and b != INF and b - a > threshold:
            threshold = b - a
    x = tuple((threshold + 1) if r == bad_row else ZERO for r in range(d))
    y = tuple((threshold + 2) if r == bad_row else ZERO for r in range(d))
    if extension_values(pres, x) != extension_values(pres, y):
        raise TheoremViolation("stabilized columns give different extensions")
    return bad_row, x, y


def extensions_injective(
    pres: Presentation, trials: int = 100, seed: int = 0
) -> InjectivityVerdict:
    """Decide the injectivity dichotomy for x ↦ Stiefel(A|x).

    Minimal presentations get proof-grade certificates plus `trials`
    sampled pairs checked distinct (and recoverable); non-minimal ones get
    a verified collision witness.
    """
    if is_minimal(pres):
        certs = certificate_bases(pres)
        rng = random.Random(seed)
        for _ in range(trials):
            x = sample_column(rng, pres.d)
            y = sample_column(rng, pres.d)
            while y == x:
                y = sample_column(rng, pres.d)
            vx = extension_values(pres, x)
            vy = extension_values(pres, y)
            if vx == vy:
                raise TheoremViolation("sampled collision under a minimal presentation")
            for cert, xi in zip(certs, x):
                expected = INF if xi == INF else cert.a + xi
                if vx[cert.subset] != expected:
                    raise TheoremViolation("certificate recovery failed")
        return InjectivityVerdict(verdict="INJECTIVE", certificates=certs)
    row, x, y = nonminimal_collision(pres)
    return InjectivityVerdict(verdict="COLLISION", collision=(row, x, y))


@dataclass(frozen=True)
class MinimalExtensionPresentation:
    full: Presentation  # (A|x) on n+1 columns
    base: Presentation  # A, minimal for mu' ∖ *
    x: tuple


def present_extension_minimally(
    mu_prime: ValuatedMatroid, presB: Presentation
) -> MinimalExtensionPresentation:
    """Present an extension by a column added to a minimal presentation.

    The last column of presB is the extension element *; * must not be a
    coloop (the rank-increasing case is out of scope).  The refinement
    preserves *-membership rowwise, and the output is verified: A presents
    mu' ∖ * minimally and (A|x) presents mu'.
    """
    if not representatives_equal(presB.mu, mu_prime):
        raise InputError("matrix does not present the extension")
    star = mu_prime.n - 1
    star_bit = 1 << star
    under = mu_prime.underlying()
    if all(b & star_bit for b in under.bases):
        raise InputError("rank-increasing extension out of scope: * is a coloop")
    minimized = minimize(presB, keep=star)
    rows_a = [row[:star] for row in minimized.matrix.rows]
    x = tuple(row[star] for row in minimized.matrix.rows)
    base_mu = vdelete(mu_prime, star_bit)
    presA = Presentation(TropMatrix(rows_a))
    if not representatives_equal(presA.mu, base_mu):
        raise TheoremViolation("base matrix does not present the deletion")
    if not is_minimal(presA):
        raise TheoremViolation("base matrix is not minimal for the deletion")
    if extension_values(presA, x) != mu_prime.values:
        raise TheoremViolation("recombined column does not reproduce the extension")
    return MinimalExtensionPresentation(full=minimized, base=presA, x=x)


def meet(
    pres: Presentation, x: Sequence[TropScalar], y: Sequence[TropScalar]
) -> NormalizedExtension:
    """Greatest lower bound of two extensions of one presentation.

    Equals the extension by the coordinatewise min column; verified to be
    the coordinatewise min of the two normalized extensions.
    """
    mn = tuple(min(a, b) for a, b in zip(x, y))
    out = extend(pres, mn)
    ex = extension_values(pres, x)
    ey = extension_values(pres, y)
    for mask, v in out.values().items():
        if v != min(ex[mask], ey[mask]):
            raise TheoremViolation("meet is not the coordinatewise min")
    return out


def poset_leq(a: NormalizedExtension, b: NormalizedExtension) -> bool:
    """Coordinatewise comparison of normalized extensions of the same base."""
    if a.base.n != b.base.n or a.base.values != b.base.values:
        raise InputError("extensions are normalized against different bases")
    return all(v <= b.values()[mask] for mask, v in a.values().items())


def solve_extension_column(
    pres: Presentation, star_values: dict[int, TropScalar]
) -> Optional[tuple[TropScalar, ...]]:
    """A column x with the given *-containing minors, or None.

    `star_values` maps each (d-1)-subset J of the base columns to the
    target value of the minor on J ∪ {*}.  The system min_i(m_Ji + x_i) =
    target_J is min-plus linear in x; its principal solution (the greatest
    coordinatewise lower bound) solves it whenever anything does, so one
    residuation pass plus a verification decides existence exactly.
    """
    d = pres.d
    table = pres.reduced_minors()
    x: list[TropScalar] = []
    for i in range(d):
        lo = None
        for j_mask, minors in table.items():
            m = minors[i]
            if m == INF:
                continue
            t = star_values[j_mask]
            if t == INF:
                lo = INF
                break
            if lo is None or (lo != INF and t - m > lo):
                lo = t - m
        x.append(INF if lo is None else lo)
    got = extension_values(pres, x)
    star_bit = 1 << pres.n
    for j_mask, t in star_values.items():
        if got[j_mask | star_bit] != t:
            return None
    return tuple(x)
