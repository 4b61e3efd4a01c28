"""Exact linear feasibility over the rationals.

Two small tools used by the realizability solver: an incremental system of
linear *equalities* kept in reduced row-echelon form (cheap consistency
checks while exploring tight-matching assignments), and Fourier–Motzkin
elimination for systems of weak inequalities, with witness extraction by
back-substitution.  Constraints are dictionaries var -> coefficient plus a
constant; variables are arbitrary hashable keys.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Optional, Sequence

Expr = dict  # var -> Fraction coefficient


class LinSys:
    """Incremental equalities Σ c_v·v = const, reduced on the fly.

    Pivot variables are expressed as affine combinations of free variables:
    pivots[p] = (expr, const) means p = const + Σ expr[v]·v.
    """

    __slots__ = ("pivots",)

    def __init__(self, pivots: Optional[dict] = None):
        self.pivots = pivots if pivots is not None else {}

    def copy(self) -> "LinSys":
        return LinSys({p: (dict(e), c) for p, (e, c) in self.pivots.items()})

    def reduce(self, expr: Expr, const: Fraction) -> tuple[Expr, Fraction]:
        """Substitute pivot variables; returns an expression over free vars."""
        out: Expr = {}
        c = const
        stack = list(expr.items())
        while stack:
            v, coeff = stack.pop()
            if coeff == 0:
                continue
            if v in self.pivots:
                pexpr, pconst = self.pivots[v]
                c += coeff * pconst
                for w, wc in pexpr.items():
                    stack.append((w, coeff * wc))
            else:
                out[v] = out.get(v, Fraction(0)) + coeff
        return {v: c0 for v, c0 in out.items() if c0 != 0}, c

    def add_equation(self, expr: Expr, rhs: Fraction) -> bool:
        """Add Σ expr·v = rhs; False when inconsistent with what is known."""
        reduced, c = self.reduce(expr, Fraction(0))
        # equation now reads: Σ reduced·v + c = rhs
        if not reduced:
            return c == rhs
        pivot = min(reduced, key=repr)
        pc = reduced.pop(pivot)
        # pivot = (rhs - c - Σ reduced·v) / pc
        new_expr = {v: -coeff / pc for v, coeff in reduced.items()}
        new_const = (rhs - c) / pc
        for p, (e, c0) in list(self.pivots.items()):
            if pivot in e:
                coeff = e.pop(pivot)
                c0 += coeff * new_const
                for w, wc in new_expr.items():
                    e[w] = e.get(w, Fraction(0)) + coeff * wc
                self.pivots[p] = ({w: wc for w, wc in e.items() if wc != 0}, c0)
        self.pivots[pivot] = (new_expr, new_const)
        return True

    def evaluate(self, free_values: dict) -> dict:
        """Values of the pivot variables given values for the free variables."""
        out = dict(free_values)
        for p, (e, c) in self.pivots.items():
            out[p] = c + sum(coeff * free_values.get(v, Fraction(0)) for v, coeff in e.items())
        return out


def fm_feasible(
    constraints: Sequence[tuple[Expr, Fraction]],
) -> Optional[dict]:
    """Feasibility of weak inequalities Σ expr·v ≥ const; returns a witness.

    All constraints are weak, so Fourier–Motzkin never needs strictness
    bookkeeping; the witness assigns every variable an exact rational.
    """
    rows = [({v: c for v, c in e.items() if c != 0}, b) for e, b in constraints]
    for e, b in rows:
        if not e and b > 0:
            return None
    rows = [(e, b) for e, b in rows if e]
    variables = sorted({v for e, _ in rows for v in e}, key=repr)
    eliminated: list[tuple[Hashable, list, list]] = []

    while variables:
        # pick the variable with the fewest lower x upper combinations
        def cost(v):
            pos = sum(1 for e, _ in rows if e.get(v, 0) > 0)
            neg = sum(1 for e, _ in rows if e.get(v, 0) < 0)
            return pos * neg if (pos and neg) else max(pos, neg)

        var = min(variables, key=lambda v: (cost(v), repr(v)))
        variables.remove(var)
        lowers = []  # var >= const + Σ expr·w
        uppers = []  # var <= const + Σ expr·w
        rest = []
        for e, b in rows:
            c = e.get(var)
            if c is None or c == 0:
                rest.append((e, b))
                continue
            others = {w: wc for w, wc in e.items() if w != var}
            # c·var + Σ others·w >= b
            bound_expr = {w: -wc / c for w, wc in others.items()}
            bound_const = b / c
            if c > 0:
                lowers.append((bound_expr, bound_const))
            else:
                uppers.append((bound_expr, bound_const))
        for le, lc in lowers:
            for ue, uc in uppers:
                # need lower <= upper: Σ (ue-le)·w >= lc - uc
                diff = dict(ue)
                for w, wc in le.items():
                    diff[w] = diff.get(w, Fraction(0)) - wc
                diff = {w: wc for w, wc in diff.items() if wc != 0}
                b = lc - uc
                if not diff:
                    if b > 0:
                        return None
                else:
                    rest.append((diff, b))
        eliminated.append((var, lowers, uppers))
        rows = rest

    for e, b in rows:
        if b > 0:
            return None

    witness: dict = {}
    for var, lowers, uppers in reversed(eliminated):
        lo = None
        for e, c in lowers:
            val = c + sum(wc * witness.get(w, Fraction(0)) for w, wc in e.items())
            if lo is None or val > lo:
                lo = val
        hi = None
        for e, c in uppers:
            val = c + sum(wc * witness.get(w, Fraction(0)) for w, wc in e.items())
            if hi is None or val < hi:
                hi = val
        if lo is not None:
            witness[var] = lo
        elif hi is not None:
            witness[var] = hi
        else:
            witness[var] = Fraction(0)
    return witness
