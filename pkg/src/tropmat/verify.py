"""Seeded theorem-verification suites over random corpora.

Each suite runs one structural identity over a generated corpus and
reports per-instance results; failures carry the full serialized instance
so they can be replayed.  Suites are deterministic functions of their
parameters, including the seed.
"""

from __future__ import annotations

import random
from typing import Callable

from .corpus import CorpusSpec, corpus_presentations, gen_matrix
from .errors import InputError
from .extension import (
    extend,
    extended_presentation,
    extension_values,
    extensions_injective,
    present_extension_minimally,
    sample_column,
)
from .matrix import TropMatrix
from .matroid import maximal_presentation, t_of
from .presentation import Presentation, is_minimal
from .serialize import matrix_to_json
from .trop import INF
from .valuated import in_tropical_linear_space

SUITES = ("different", "minimal", "join", "fo-maximal", "decompose")


def run_suite(suite: str, spec: CorpusSpec, trials: int = 20) -> dict:
    """Run one named suite; the report's `ok` is True iff every instance passed."""
    runners: dict[str, Callable] = {
        "different": _suite_different,
        "minimal": _suite_minimal,
        "join": _suite_join,
        "fo-maximal": _suite_fo_maximal,
        "decompose": _suite_decompose,
    }
    if suite not in runners:
        raise InputError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
    return runners[suite](spec, trials)


def _report(suite: str, spec: CorpusSpec, results: list[dict], extra: dict | None = None) -> dict:
    failures = [r for r in results if not r["ok"]]
    out = {
        "suite": suite,
        "params": {
            "n": spec.n,
            "d": spec.d,
            "count": spec.count,
            "seed": spec.seed,
            "inf_probability": str(spec.inf_probability),
            "value_grid": [str(g) for g in spec.value_grid],
        },
        "total": len(results),
        "passed": len(results) - len(failures),
        "failures": failures,
        "ok": not failures,
    }
    if extra:
        out.update(extra)
    return out


def _run_instances(spec: CorpusSpec, body: Callable[[int, Presentation], dict]) -> list[dict]:
    results = []
    for sub_seed, pres in corpus_presentations(spec):
        record: dict = {"seed": sub_seed, "matrix": matrix_to_json(pres.matrix)}
        try:
            record.update(body(sub_seed, pres))
            record.setdefault("ok", True)
        except Exception as exc:  # noqa: BLE001 - failure dumps carry everything
            record["ok"] = False
            record["error"] = f"{type(exc).__name__}: {exc}"
        results.append(record)
    return results


def _suite_different(spec: CorpusSpec, trials: int) -> dict:
    """Injectivity dichotomy, plus minimality of extended minimal presentations."""

    def body(sub_seed: int, pres: Presentation) -> dict:
        minimal = is_minimal(pres)
        verdict = extensions_injective(pres, trials=trials, seed=sub_seed)
        if (verdict.verdict == "INJECTIVE") != minimal:
            raise AssertionError("verdict does not match minimality")
        out: dict = {"minimal": minimal, "verdict": verdict.verdict}
        if minimal:
            rng = random.Random(sub_seed ^ 0x5EED)
            x = sample_column(rng, pres.d)
            if not is_minimal(extended_presentation(pres, x)):
                raise AssertionError("extension of a minimal presentation is not minimal")
        return out

    results = _run_instances(spec, body)
    counts = {
        "injective": sum(1 for r in results if r.get("verdict") == "INJECTIVE"),
        "collision": sum(1 for r in results if r.get("verdict") == "COLLISION"),
    }
    return _report("different", spec, results, {"verdicts": counts})


def _suite_minimal(spec: CorpusSpec, trials: int) -> dict:
    """Every rank-preserving extension is presentable over a minimal base."""
    master = random.Random(spec.seed)
    results = []
    while len(results) < spec.count:
        sub_seed = master.getrandbits(48)
        rng = random.Random(sub_seed)
        B = gen_matrix(rng, spec.d, spec.n, spec.value_grid, spec.inf_probability)
        pres = Presentation(B)
        star_bit = 1 << (spec.n - 1)
        if all(b & star_bit for b in pres.mu.underlying().bases):
            continue  # * would be a coloop; rank-increasing case is out of scope
        record = {"seed": sub_seed, "matrix": matrix_to_json(B)}
        try:
            res = present_extension_minimally(pres.mu, pres)
            record["base"] = matrix_to_json(res.base.matrix)
            record["ok"] = True
        except Exception as exc:  # noqa: BLE001
            record["ok"] = False
            record["error"] = f"{type(exc).__name__}: {exc}"
        results.append(record)
    return _report("minimal", spec, results)


def _suite_join(spec: CorpusSpec, trials: int) -> dict:
    """Meets of extensions: the min column, coordinatewise; semilattice laws."""

    def body(sub_seed: int, pres: Presentation) -> dict:
        rng = random.Random(sub_seed ^ 0x901D)
        x = sample_column(rng, pres.d)
        y = sample_column(rng, pres.d)
        z = sample_column(rng, pres.d)
        vx = extension_values(pres, x)
        vy = extension_values(pres, y)
        vz = extension_values(pres, z)
        mxy = extension_values(pres, tuple(min(a, b) for a, b in zip(x, y)))
        if any(mxy[m] != min(vx[m], vy[m]) for m in mxy):
            raise AssertionError("meet law fails")
        if extension_values(pres, tuple(min(a, b) for a, b in zip(y, x))) != mxy:
            raise AssertionError("meet is not commutative")
        if extension_values(pres, tuple(min(a, a2) for a, a2 in zip(x, x))) != vx:
            raise AssertionError("meet is not idempotent")
        m_xy_z = tuple(min(min(a, b), c) for a, b, c in zip(x, y, z))
        m_x_yz = tuple(min(a, min(b, c)) for a, b, c in zip(x, y, z))
        vxyz = extension_values(pres, m_xy_z)
        if vxyz != extension_values(pres, m_x_yz):
            raise AssertionError("meet is not associative")
        if any(vxyz[m] != min(vx[m], vy[m], vz[m]) for m in vxyz):
            raise AssertionError("triple meet is not the coordinatewise min")
        return {}

    return _report("join", spec, _run_instances(spec, body))


def _suite_fo_maximal(spec: CorpusSpec, trials: int) -> dict:
    """Apex support equals the maximal presentation; rows lie in Trop(mu)."""

    def body(sub_seed: int, pres: Presentation) -> dict:
        apx = pres.apex()
        under = pres.mu.underlying()
        supports = [pres.matrix.row_support(i) for i in range(pres.d)]
        maxpres = maximal_presentation(under, supports)
        got = sorted(apx.matrix.row_support(i) for i in range(pres.d))
        if got != sorted(maxpres):
            raise AssertionError("apex support differs from the maximal presentation")
        for i in range(pres.d):
            ok, _ = in_tropical_linear_space(pres.mu, apx.matrix.rows[i])
            if not ok:
                raise AssertionError("apex row outside the tropical linear space")
        return {"apex": matrix_to_json(apx.matrix)}

    return _report("fo-maximal", spec, _run_instances(spec, body))


def _suite_decompose(spec: CorpusSpec, trials: int) -> dict:
    """Decomposition against the apex: multiplicities and row reconstruction."""

    def body(sub_seed: int, pres: Presentation) -> dict:
        apx = pres.apex()
        dec = pres.decomposition()
        mults = apx.multiplicities()
        if sum(c for _, _, c in mults) != pres.d:
            raise AssertionError("multiplicities do not sum to the rank")
        for M, _, count in mults:
            if count != t_of(M):
                raise AssertionError("multiplicity differs from the Möbius count")
        for i, row in enumerate(dec.rows):
            for j in range(pres.n):
                expected = row.apex[j]
                if expected != INF:
                    expected = expected + row.lam
                if j in row.alpha:
                    expected = INF if row.alpha[j] == INF else expected + row.alpha[j]
                if pres.matrix.rows[i][j] != expected:
                    raise AssertionError("row does not reconstruct from its decomposition")
        return {
            "dmat": [
                {"bases": len(M.bases), "multiplicity": c} for M, _, c in mults
            ]
        }

    return _report("decompose", spec, _run_instances(spec, body))
