"""Matrix presentations of transversal valuated matroids.

A presentation is a d x n tropical matrix whose maximal minors realize the
representative function of a valuated matroid (the tropical Stiefel map).
This module computes the distinguished apex matrix (the valuated analogue
of the unique maximal presentation) by iterating exact per-entry lower
bounds to a fixpoint and then verifying the result against four
independent structural identities; decomposes arbitrary presentations
against the apex matrix; and tests/produces minimality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .bits import elements_of, full_mask, mask_of, popcount, subsets_of_size
from .errors import InputError, TheoremViolation
from .matrix import TropMatrix, all_maximal_minors, tropical_minor
from .matroid import (
    Matroid,
    cocircuits,
    contained_in_presentation,
    cyclic_flats,
    maximal_presentation,
    maximal_presentation_of,
    minimal_refinement,
    t_of,
)
from .trop import INF, ZERO, TropScalar, support_mask
from .valuated import (
    ValuatedMatroid,
    distinguished_matroid,
    equivalent,
    in_tropical_linear_space,
    representatives_equal,
)


def stiefel(A: TropMatrix) -> ValuatedMatroid:
    """The valuated matroid of tropical maximal minors of A."""
    minors = all_maximal_minors(A)
    if all(v == INF for v in minors.values()):
        raise InputError("not a presentation of any valuated matroid: all minors are INF")
    return ValuatedMatroid(A.n, A.d, minors)


class Presentation:
    """A matrix together with the exact representative it presents."""

    __slots__ = ("matrix", "mu", "_reduced", "_apex", "_decomp", "_minimal")

    def __init__(self, matrix: TropMatrix, mu: Optional[ValuatedMatroid] = None):
        for i in range(matrix.d):
            if matrix.row_support(i) == 0:
                raise InputError(f"row {i} is all-INF")
        computed = stiefel(matrix)
        if mu is not None and not representatives_equal(computed, mu):
            raise InputError("matrix does not present the given representative")
        self.matrix = matrix
        self.mu = computed
        self._reduced: Optional[dict] = None
        self._apex = None
        self._decomp = None
        self._minimal: Optional[bool] = None

    @property
    def d(self) -> int:
        return self.matrix.d

    @property
    def n(self) -> int:
        return self.matrix.n

    def reduced_minors(self) -> dict[int, tuple[TropScalar, ...]]:
        """For each (d-1)-subset J of columns, the minors with one row removed.

        Entry [J][i] is the minor of A on rows [d]∖{i} and columns J; this
        is the workhorse table for extension columns and certificates.
        """
        if self._reduced is None:
            d, n = self.d, self.n
            table: dict[int, tuple[TropScalar, ...]] = {}
            row_sets = [tuple(r for r in range(d) if r != i) for i in range(d)]
            for j_mask in subsets_of_size(full_mask(n), d - 1):
                cols = elements_of(j_mask)
                table[j_mask] = tuple(
                    tropical_minor(self.matrix, row_sets[i], cols) for i in range(d)
                )
            self._reduced = table
        return self._reduced

    def apex(self) -> "ApexDecomposition":
        if self._apex is None:
            self._apex = compute_dapx(self)
        return self._apex

    def decomposition(self) -> "ApexDecomposition":
        if self._decomp is None:
            self._decomp = decompose(self, self.apex())
        return self._decomp


@dataclass(frozen=True)
class ApexRow:
    """One presentation row expressed against its distinguished matroid.

    The row equals apex + lam·(1,...,1) + bumps, where the bumps raise the
    coordinates in j_mask by alpha[j] > 0 (INF removes the coordinate from
    the support).  `ground` lists the global elements of E∖F in ascending
    order; `matroid` lives on those elements relabelled 0..len(ground)-1.
    """

    f_mask: int
    apex: tuple
    ground: tuple
    matroid: Matroid
    lam: TropScalar
    j_mask: int
    alpha: dict

    def infinite_bump_mask(self) -> int:
        return mask_of(j for j, a in self.alpha.items() if a == INF)


@dataclass(frozen=True)
class ApexDecomposition:
    rows: tuple
    matrix: TropMatrix
    mu: ValuatedMatroid

    def multiplicities(self) -> list[tuple[Matroid, int, int]]:
        """Distinct (matroid, F, count) triples over the rows."""
        seen: list[tuple[Matroid, int, int]] = []
        for row in self.rows:
            for idx, (m, f, c) in enumerate(seen):
                if f == row.f_mask and m == row.matroid:
                    seen[idx] = (m, f, c + 1)
                    break
            else:
                seen.append((row.matroid, row.f_mask, 1))
        return seen


def is_presentation(A: TropMatrix, mu: ValuatedMatroid) -> bool:
    """Exact representative equality of Stiefel(A) with mu."""
    if A.n != mu.n or A.d != mu.d:
        raise InputError("shape mismatch")
    try:
        return representatives_equal(stiefel(A), mu)
    except InputError:
        return False


def _reduced_minor_tables(rows: list[list[TropScalar]], n: int, skip_row: int):
    """Minors of the matrix without `skip_row` on all (d-1)-subsets of columns."""
    d = len(rows)
    kept = [rows[r] for r in range(d) if r != skip_row]
    sub = TropMatrix(kept) if kept else None
    table: dict[int, TropScalar] = {}
    row_idx = tuple(range(d - 1))
    for j_mask in subsets_of_size(full_mask(n), d - 1):
        if sub is None:
            table[j_mask] = ZERO
        else:
            table[j_mask] = tropical_minor(sub, row_idx, elements_of(j_mask))
    return table


def entry_lower_bound(pres: Presentation, i: int, j: int) -> TropScalar:
    """Minimum value the (i, j) entry can take without changing the minors.

    Closed form: over bases B containing column j, let w_B be the best
    matching of B that routes j through row i with the (i, j) entry
    excluded; the bound is max(mu_B - w_B) over finite w_B, or INF when no
    w_B is finite (the entry participates in no finite matching and is
    reported as unconstrained-from-above).
    """
    rows = [list(r) for r in pres.matrix.rows]
    table = _reduced_minor_tables(rows, pres.n, i)
    bound = _entry_bound_from_table(pres.mu.values, table, pres.n, pres.d, j)
    return INF if bound is None else bound


def _entry_bound_from_table(
    target: dict[int, TropScalar],
    table: dict[int, TropScalar],
    n: int,
    d: int,
    j: int,
) -> Optional[TropScalar]:
    """max(mu_B - w_B) over finite w_B; None when the entry is unconstrained.

    An INF constraint (finite matching against an INF target minor) forces
    the entry to stay INF; no constraint at all means no finite matching
    ever routes through the entry, so its value is irrelevant to the minors
    and the apex sweep must leave it alone (this happens exactly when a
    distinguished matroid is disconnected and its cell has extra lineality).
    """
    bound = None
    jbit = 1 << j
    for b_mask, mu_b in target.items():
        if not b_mask & jbit:
            continue
        w = table[b_mask & ~jbit]
        if w == INF:
            continue
        constraint = mu_b - w  # INF - finite == INF: entry must stay INF
        if bound is None or constraint > bound:
            bound = constraint
    return bound


def compute_dapx(pres: Presentation, max_sweeps: int = 64) -> ApexDecomposition:
    """Iterate entry lower bounds to a fixpoint and verify the apex structure.

    Entries are updated in place row by row (a row's bounds never depend on
    its own entries, so each update preserves the minors exactly).  The
    fixpoint is then verified: it presents mu, its support is the maximal
    presentation of the underlying matroid, its rows lie in Trop(mu), and
    its distinguished matroids carry the Möbius multiplicities.
    """
    mu = pres.mu
    target = mu.values
    d, n = pres.d, pres.n
    rows = [list(r) for r in pres.matrix.rows]
    under = mu.underlying()
    original_supports = [pres.matrix.row_support(i) for i in range(d)]
    maxpres = maximal_presentation(under, original_supports)

    for _ in range(max_sweeps):
        changed = False
        for i in range(d):
            table = _reduced_minor_tables(rows, n, i)
            for j in range(n):
                bound = _entry_bound_from_table(target, table, n, d, j)
                if bound is not None and bound != rows[i][j]:
                    rows[i][j] = bound
                    changed = True
        if changed:
            continue
        # Fixpoint of the constrained sweep.  Entries the maximal
        # presentation needs but no finite matching constrains (extra
        # lineality from disconnected distinguished matroids) are pinned
        # to 0, one at a time, re-running the sweep after each fill.
        filled = False
        for i in range(d):
            missing = maxpres[i] & ~support_mask(rows[i])
            if not missing:
                continue
            table = _reduced_minor_tables(rows, n, i)
            for j in elements_of(missing):
                bound = _entry_bound_from_table(target, table, n, d, j)
                if bound is None:
                    rows[i][j] = ZERO
                    filled = True
                    break
                raise TheoremViolation(
                    "dapx reconstruction failed: maximal support forces a constrained INF entry"
                )
            if filled:
                break
        if not filled:
            break
    else:
        raise TheoremViolation("dapx reconstruction failed: no fixpoint reached")

    Q = TropMatrix(rows)
    if not is_presentation(Q, mu):
        raise TheoremViolation("dapx reconstruction failed: fixpoint is not a presentation")

    supports = [Q.row_support(i) for i in range(d)]
    if sorted(supports) != sorted(maxpres):
        raise TheoremViolation("dapx reconstruction failed: support is not the maximal presentation")

    cyclic = set(cyclic_flats(under).flats)
    apex_rows = []
    for i in range(d):
        row = Q.rows[i]
        ok, witness = in_tropical_linear_space(mu, row)
        if not ok:
            raise TheoremViolation(
                f"dapx reconstruction failed: row {i} outside Trop(mu) at {elements_of(witness)}"
            )
        f_mask = full_mask(n) & ~supports[i]
        if f_mask not in cyclic:
            raise TheoremViolation("dapx reconstruction failed: INF set is not a cyclic flat")
        y = {j: row[j] for j in elements_of(supports[i])}
        M = distinguished_matroid(mu, f_mask, y)
        apex_rows.append(
            ApexRow(
                f_mask=f_mask,
                apex=row,
                ground=elements_of(supports[i]),
                matroid=M,
                lam=ZERO,
                j_mask=0,
                alpha={},
            )
        )

    decomp = ApexDecomposition(rows=tuple(apex_rows), matrix=Q, mu=mu)
    for M, _, count in decomp.multiplicities():
        if count != t_of(M):
            raise TheoremViolation(
                f"dapx reconstruction failed: multiplicity {count} != t(M) = {t_of(M)}"
            )
    return decomp


def _admissible_against(row: Sequence[TropScalar], apex_row: ApexRow):
    """Fit row = apex' + lam + bumps against one apex copy.

    The apex of a disconnected distinguished matroid is only determined up
    to independent shifts on its connected components (the extra lineality
    of its cell), so the fit allows a per-component shift, re-anchoring the
    apex representative; for connected matroids this is the plain single
    shift.  Returns (adjusted apex, lam, j_mask, alpha) or None; the bumps
    alpha are > 0 on j_mask, which must be an independent flat.
    """
    from .matroid import connected_components

    supp_p = support_mask(row)
    supp_q = mask_of(apex_row.ground)
    if supp_p & ~supp_q or supp_p == 0:
        return None
    M = apex_row.matroid
    pos = {e: k for k, e in enumerate(apex_row.ground)}
    comp_shift: dict[int, Optional[TropScalar]] = {}
    for comp in connected_components(M):
        comp_global = mask_of(apex_row.ground[i] for i in elements_of(comp))
        meet = comp_global & supp_p
        shift = None
        for j in elements_of(meet):
            delta = row[j] - apex_row.apex[j]
            if shift is None or delta < shift:
                shift = delta
        for j in elements_of(comp_global):
            comp_shift[j] = shift
    lam = min(s for s in comp_shift.values() if s is not None)
    adjusted = list(apex_row.apex)
    j_mask = 0
    alpha: dict[int, TropScalar] = {}
    for j in apex_row.ground:
        shift = comp_shift[j]
        if shift is not None:
            adjusted[j] = apex_row.apex[j] + (shift - lam)
        diff = INF if row[j] == INF else row[j] - adjusted[j]
        if diff > lam:
            j_mask |= 1 << j
            alpha[j] = INF if diff == INF else diff - lam
    j_rel = mask_of(pos[e] for e in elements_of(j_mask))
    if not M.is_independent(j_rel) or not M.is_flat(j_rel):
        return None
    return tuple(adjusted), lam, j_mask, alpha


def decompose(pres: Presentation, apx: ApexDecomposition) -> ApexDecomposition:
    """Unique decomposition of a presentation against the apex rows.

    Each row must match some apex copy as apex + lam + bumps over an
    independent flat; a perfect matching of rows to apex copies is found
    exactly, every perfect matching must agree on the matroid assigned to
    each row, and the bump complements per matroid must embed into a
    presentation of that matroid.
    """
    if pres.n != apx.mu.n or pres.d != apx.mu.d:
        raise InputError("decompose: shape mismatch")
    if not equivalent(pres.mu, apx.mu):
        raise InputError("decompose: presentations are of different valuated matroids")
    d = pres.d
    fits = []
    for r in range(d):
        row_fits = {}
        for k in range(d):
            fit = _admissible_against(pres.matrix.rows[r], apx.rows[k])
            if fit is not None:
                row_fits[k] = fit
        fits.append(row_fits)

    matchings: list[tuple[int, ...]] = []

    def search(r: int, used: int, acc: list[int]) -> None:
        if r == d:
            matchings.append(tuple(acc))
            return
        for k in fits[r]:
            if not used & (1 << k):
                acc.append(k)
                search(r + 1, used | (1 << k), acc)
                acc.pop()

    search(0, 0, [])
    if not matchings:
        raise InputError("not a presentation decomposition")

    for r in range(d):
        assigned = {(apx.rows[m[r]].f_mask, apx.rows[m[r]].matroid.bases) for m in matchings}
        if len(assigned) > 1:
            raise TheoremViolation("decomposition is ambiguous at the matroid level")

    chosen = matchings[0]
    out_rows = []
    for r in range(d):
        k = chosen[r]
        adjusted, lam, j_mask, alpha = fits[r][k]
        base = apx.rows[k]
        out_rows.append(
            ApexRow(
                f_mask=base.f_mask,
                apex=adjusted,
                ground=base.ground,
                matroid=base.matroid,
                lam=lam,
                j_mask=j_mask,
                alpha=alpha,
            )
        )

    _verify_bump_complements(out_rows)
    return ApexDecomposition(rows=tuple(out_rows), matrix=pres.matrix, mu=pres.mu)


def _verify_bump_complements(rows: Sequence[ApexRow]) -> None:
    """FO-style side condition: {E(M)∖J} per matroid embeds in a presentation of M."""
    groups: list[tuple[ApexRow, list[int]]] = []
    for row in rows:
        pos = {e: k for k, e in enumerate(row.ground)}
        part = mask_of(pos[e] for e in elements_of(mask_of(row.ground) & ~row.j_mask))
        for idx, (rep, parts) in enumerate(groups):
            if rep.f_mask == row.f_mask and rep.matroid == row.matroid:
                parts.append(part)
                break
        else:
            groups.append((row, [part]))
    for rep, parts in groups:
        if not contained_in_presentation(rep.matroid, parts):
            raise TheoremViolation(
                "bump complements do not embed into a presentation of the distinguished matroid"
            )


def is_minimal(pres: Presentation) -> bool:
    """Support rows are cocircuits iff each apex-relative INF set is a hyperplane.

    Both characterizations are computed; disagreement raises, as they are
    equivalent for genuine presentations.
    """
    if pres._minimal is not None:
        return pres._minimal
    dec = pres.decomposition()
    by_apex = True
    for r, row in enumerate(dec.rows):
        supp_p = support_mask(pres.matrix.rows[r])
        missing = mask_of(row.ground) & ~supp_p
        pos = {e: k for k, e in enumerate(row.ground)}
        missing_rel = mask_of(pos[e] for e in elements_of(missing))
        if missing_rel not in set(_hyperplane_masks(row.matroid)):
            by_apex = False
            break
    under = pres.mu.underlying()
    cocircuit_set = set(cocircuits(under))
    by_support = all(pres.matrix.row_support(i) in cocircuit_set for i in range(pres.d))
    if by_apex != by_support:
        raise TheoremViolation(
            f"minimality criteria disagree: apex={by_apex}, support={by_support}"
        )
    pres._minimal = by_apex
    return by_apex


def _hyperplane_masks(M: Matroid) -> tuple[int, ...]:
    from .matroid import hyperplanes

    return hyperplanes(M)


def minimize(pres: Presentation, keep: Optional[int] = None, rng=None) -> Presentation:
    """A minimal presentation of the same representative.

    The apex rows are refined block by block: rows sharing a distinguished
    matroid M correspond to the full-support rows of the maximal
    presentation of M, which is refined (within M) to a minimal one; the
    apex rows restricted to those refined supports drop only independent
    flats of M, so the result still presents the representative.  Refining
    the support system against the underlying matroid instead can remove
    sets that are not flats of the row's distinguished matroid and break
    the presentation, so the refinement must stay blockwise.

    `keep` (a column index) preserves that column's membership per row.
    The output is verified to present the representative and be minimal.
    Minimal presentations are returned unchanged.
    """
    if rng is None and is_minimal(pres):
        return pres
    apx = pres.apex()
    d, n = pres.d, pres.n
    blocks: list[tuple[ApexRow, list[int]]] = []
    for idx, row in enumerate(apx.rows):
        for rep, members in blocks:
            if rep.f_mask == row.f_mask and rep.matroid == row.matroid:
                members.append(idx)
                break
        else:
            blocks.append((row, [idx]))

    refined_support: dict[int, int] = {}
    for rep, members in blocks:
        M = rep.matroid
        ground = rep.ground
        maxp = maximal_presentation_of(M)
        rel_full = full_mask(M.n)
        full_slots = [s for s, mask in enumerate(maxp) if mask == rel_full]
        if len(full_slots) != len(members):
            raise TheoremViolation(
                "minimize failed: block size does not match the full-row multiplicity"
            )
        keep_rel = None
        if keep is not None and (1 << keep) & mask_of(ground):
            keep_rel = ground.index(keep)
        refined = minimal_refinement(M, maxp, keep=keep_rel, rng=rng)
        for row_idx, slot in zip(members, full_slots):
            rel = refined[slot]
            refined_support[row_idx] = mask_of(ground[e] for e in elements_of(rel))

    rows = []
    for i in range(d):
        mask = refined_support[i]
        rows.append(
            tuple(apx.matrix.rows[i][j] if mask & (1 << j) else INF for j in range(n))
        )
    out = TropMatrix(rows)
    if not is_presentation(out, pres.mu):
        raise TheoremViolation("minimize failed: refined matrix does not present mu")
    result = Presentation(out)
    if not is_minimal(result):
        raise TheoremViolation("minimize failed: refined matrix is not minimal")
    return result
