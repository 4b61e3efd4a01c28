"""Experimental probe: are coordinatewise minima of extensions again extensions?

Extensions of one fixed presentation are closed under coordinatewise min;
whether that holds across *different* presentations of the same valuated
matroid is open.  This module takes minima of extensions built from two
independently refined minimal presentations, checks the valuated-matroid
axioms, and decides exactly whether the result is some Stiefel(A|x) with
A of minimal support — flagging any instance where closure fails.

The realizability decision enumerates all minimal support patterns of the
underlying matroid, every placement of the new column's support, and every
assignment of tight matchings; each assignment reduces to exact linear
equalities plus weak inequalities over the unknown finite entries, decided
by Fourier–Motzkin elimination over ℚ.  Verdicts ship verified witnesses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Mapping, Optional, Sequence

from .bits import elements_of, full_mask, mask_of, subsets_of_size
from .corpus import gen_matrix
from .errors import InputError
from .extension import NormalizedExtension, extend, sample_column
from .fme import LinSys, fm_feasible
from .matrix import TropMatrix, all_maximal_minors
from .matroid import Matroid, cocircuits, presents, transversal_from_system
from .presentation import Presentation, minimize
from .serialize import matrix_to_json, subset_key, values_to_json
from .trop import INF, TropScalar, format_scalar
from .valuated import ValuatedMatroid, check_pluecker_values

LAB_MAX_N = 5
LAB_MAX_D = 3


def min_of_extensions(
    a: NormalizedExtension, b: NormalizedExtension
) -> dict[int, TropScalar]:
    """Coordinatewise min of two extensions normalized to the same base."""
    if a.base.n != b.base.n or a.base.values != b.base.values:
        raise InputError("extensions are normalized against different bases")
    av, bv = a.values(), b.values()
    return {mask: min(v, bv[mask]) for mask, v in av.items()}


def check_valuated(
    n: int, d: int, values: Mapping[int, TropScalar]
) -> tuple[bool, Optional[str]]:
    """Valuated-matroid axioms on a raw candidate function, without raising."""
    finite = [m for m, v in values.items() if v != INF]
    if not finite:
        return False, "empty support"
    try:
        Matroid(n, finite)
    except InputError as exc:
        return False, f"support: {exc}"
    ok, witness = check_pluecker_values(n, d, values)
    if not ok:
        s_mask, quad = witness
        return False, f"3-term relation at S={elements_of(s_mask)}, quad={quad}"
    return True, None


def minimal_support_patterns(under: Matroid) -> list[tuple[int, ...]]:
    """All minimal presentations of a transversal matroid, as sorted row multisets."""
    out = []
    for combo in combinations_with_replacement(cocircuits(under), under.d):
        if presents(list(combo), under):
            out.append(tuple(sorted(combo)))
    return out


def _matchings(rows: Sequence[int], b_mask: int) -> list[tuple[tuple[int, int], ...]]:
    """Perfect matchings of the elements of b_mask into the rows containing them."""
    elems = elements_of(b_mask)
    d = len(rows)
    out: list[tuple[tuple[int, int], ...]] = []

    def go(idx: int, used: int, acc: list[tuple[int, int]]):
        if idx == len(elems):
            out.append(tuple(acc))
            return
        e = elems[idx]
        for r in range(d):
            if used & (1 << r) or not rows[r] & (1 << e):
                continue
            acc.append((r, e))
            go(idx + 1, used | (1 << r), acc)
            acc.pop()

    go(0, 0, [])
    return out


@dataclass(frozen=True)
class RealizabilityResult:
    realizable: bool
    witness: Optional[TropMatrix]
    patterns_tried: int
    assignments_tried: int


def is_transversal_extension(
    candidate: Mapping[int, TropScalar], mu: ValuatedMatroid
) -> RealizabilityResult:
    """Decide whether the candidate is Stiefel(A|x) for minimal-support A.

    The candidate lives on the base ground set plus * (index n) and must
    restrict to mu's representative on the *-free subsets; * must not be a
    coloop of its support.  Completeness rests on the fact that every
    rank-preserving transversal extension arises by adding a column to a
    minimal presentation of the deletion.
    """
    n, d = mu.n, mu.d
    if n > LAB_MAX_N or d > LAB_MAX_D:
        raise InputError("lab size cap: need n <= 5 and d <= 3")
    star_bit = 1 << n
    expected_domain = set(subsets_of_size(full_mask(n + 1), d))
    if set(candidate) != expected_domain:
        raise InputError("candidate is not a function on the d-subsets of the extended ground set")
    for mask, v in mu.values.items():
        if candidate[mask] != v:
            raise InputError("candidate does not restrict to the base representative")
    support = sorted(m for m, v in candidate.items() if v != INF)
    if all(m & star_bit for m in support):
        raise InputError("rank-increasing extension out of scope: * is a coloop")

    finite_bs = [(m, candidate[m]) for m in support]
    patterns_tried = 0
    assignments_tried = 0
    seen_patterns: set[tuple[int, ...]] = set()
    for base_pattern in minimal_support_patterns(mu.underlying()):
        for star_bits in range(1 << d):
            rows = tuple(
                sorted(
                    base_pattern[i] | (star_bit if star_bits & (1 << i) else 0)
                    for i in range(d)
                )
            )
            if rows in seen_patterns:
                continue
            seen_patterns.add(rows)
            got = transversal_from_system(rows, n + 1)
            if got is None or list(got.bases) != support:
                continue
            patterns_tried += 1
            witness, tried = _solve_pattern(rows, finite_bs, n + 1, candidate)
            assignments_tried += tried
            if witness is not None:
                return RealizabilityResult(True, witness, patterns_tried, assignments_tried)
    return RealizabilityResult(False, None, patterns_tried, assignments_tried)


def _solve_pattern(
    rows: tuple[int, ...],
    finite_bs: Sequence[tuple[int, TropScalar]],
    width: int,
    candidate: Mapping[int, TropScalar],
) -> tuple[Optional[TropMatrix], int]:
    """Search tight-matching assignments for one support pattern."""
    tasks = []
    for b_mask, value in finite_bs:
        ms = _matchings(rows, b_mask)
        if not ms:
            return None, 0  # unreachable after the transversal prefilter
        tasks.append((len(ms), b_mask, value, ms))
    tasks.sort(key=lambda t: (t[0], t[1]))
    tried = 0

    def at_leaf(sys: LinSys) -> Optional[TropMatrix]:
        constraints = []
        for _, _, value, ms in tasks:
            for m in ms:
                expr = {var: 1 for var in m}
                reduced, c = sys.reduce(expr, 0)
                # need Σ expr >= value, i.e. Σ reduced·v >= value - c
                if not reduced:
                    if c < value:
                        return None
                else:
                    constraints.append((reduced, value - c))
        free = fm_feasible(constraints)
        if free is None:
            return None
        assignment = sys.evaluate(free)
        grid = [[INF] * width for _ in range(len(rows))]
        for r, row_mask in enumerate(rows):
            for e in elements_of(row_mask):
                grid[r][e] = assignment.get((r, e), 0)
        matrix = TropMatrix(grid)
        if all_maximal_minors(matrix) != dict(candidate):
            return None
        return matrix

    def dfs(idx: int, sys: LinSys) -> Optional[TropMatrix]:
        nonlocal tried
        if idx == len(tasks):
            tried += 1
            return at_leaf(sys)
        _, _, value, ms = tasks[idx]
        branches = []
        for m in ms:
            expr = {var: 1 for var in m}
            reduced, c = sys.reduce(expr, 0)
            if not reduced:
                if c < value:
                    return None  # some matching already beats the minimum
                if c == value:
                    branches = None  # tightness already holds, no choice needed
                    break
            else:
                branches.append((m, expr))
        if branches is None:
            return dfs(idx + 1, sys)
        for m, expr in branches:
            sys2 = sys.copy()
            if not sys2.add_equation(expr, value):
                continue
            found = dfs(idx + 1, sys2)
            if found is not None:
                return found
        return None

    return dfs(0, LinSys()), tried


def run_pinned_rank2_probe() -> dict:
    """The pinned regression instance from the 4-element rank-2 family.

    Two extensions of the trivial rank-2 valuated matroid on 3 elements,
    realized from different minimal presentations, whose min is the trivial
    extension; recorded through the full lab pipeline.
    """
    p1 = Presentation(TropMatrix.from_strings([["0", "0", "inf"], ["0", "inf", "0"]]))
    p2 = Presentation(TropMatrix.from_strings([["0", "0", "inf"], ["inf", "0", "0"]]))
    from fractions import Fraction

    e1 = extend(p2, (Fraction(0), Fraction(1)))  # value 1 on {1,*}
    e2 = extend(p1, (Fraction(0), Fraction(1)))  # value 1 on {2,*}
    cand = min_of_extensions(e1, e2)
    valuated, reason = check_valuated(p1.n + 1, p1.d, cand)
    result = is_transversal_extension(cand, p1.mu) if valuated else None
    return _report_dict(
        trial=-1,
        seed=None,
        n=3,
        d=2,
        base=p1.matrix,
        p1=p2.matrix,
        p2=p1.matrix,
        x1=(Fraction(0), Fraction(1)),
        x2=(Fraction(0), Fraction(1)),
        cand=cand,
        valuated=valuated,
        reason=reason,
        result=result,
    )


def _report_dict(
    trial, seed, n, d, base, p1, p2, x1, x2, cand, valuated, reason, result
) -> dict:
    same = p1.rows == p2.rows
    flagged = (not valuated) or (result is not None and not result.realizable)
    return {
        "trial": trial,
        "seed": seed,
        "n": n,
        "d": d,
        "base_matrix": matrix_to_json(base),
        "presentation_1": matrix_to_json(p1),
        "presentation_2": matrix_to_json(p2),
        "x1": [format_scalar(a) for a in x1],
        "x2": [format_scalar(a) for a in x2],
        "same_presentation": same,
        "min_values": values_to_json(cand),
        "valuated": valuated,
        "valuated_failure": reason,
        "realizable": None if result is None else result.realizable,
        "witness_matrix": (
            matrix_to_json(result.witness)
            if result is not None and result.witness is not None
            else None
        ),
        "patterns_tried": 0 if result is None else result.patterns_tried,
        "assignments_tried": 0 if result is None else result.assignments_tried,
        "flagged": flagged,
    }


def open_question_search(n: int, d: int, trials: int, seed: int) -> list[dict]:
    """Seeded search for instances where the min of two extensions fails closure.

    Each trial: one random transversal valuated matroid, two randomized
    minimal presentations of it, one random extension column each; the
    coordinatewise min of the two normalized extensions is tested for the
    valuated axioms and for transversal realizability.  Instances from a
    single presentation are never flagged (and none should be).
    """
    if n > LAB_MAX_N or d > LAB_MAX_D:
        raise InputError("lab size cap: need n <= 5 and d <= 3")
    if not 1 <= d <= n:
        raise InputError(f"need 1 <= d <= n, got d={d}, n={n}")
    master = random.Random(seed)
    reports = []
    for trial in range(trials):
        sub_seed = master.getrandbits(48)
        rng = random.Random(sub_seed)
        base = gen_matrix(rng, d, n)
        pres = Presentation(base)
        p1 = minimize(pres, rng=rng)
        p2 = minimize(pres, rng=rng)
        x1 = sample_column(rng, d)
        x2 = sample_column(rng, d)
        e1 = extend(p1, x1, verify=False)
        e2 = extend(p2, x2, verify=False)
        cand = min_of_extensions(e1, e2)
        valuated, reason = check_valuated(n + 1, d, cand)
        result = is_transversal_extension(cand, pres.mu) if valuated else None
        reports.append(
            _report_dict(
                trial=trial,
                seed=sub_seed,
                n=n,
                d=d,
                base=base,
                p1=p1.matrix,
                p2=p2.matrix,
                x1=x1,
                x2=x2,
                cand=cand,
                valuated=valuated,
                reason=reason,
                result=result,
            )
        )
    return reports
