"""Acceptance suite: every gate criterion at desk scale, exact arithmetic.

Each test prints one PASS line on success (run with -s to see them); any
failure is a plain assertion carrying the offending instance.  Corpora are
seeded and span n <= 8, d <= 4 for the core suites and n <= 5, d <= 3 for
the lab, with at least 100 instances per criterion.
"""

import json
import random
from fractions import Fraction

from tropmat.bits import elements_of, mask_of
from tropmat.corpus import CorpusSpec, corpus_presentations, gen_matrix
from tropmat.extension import (
    extended_presentation,
    extension_values,
    extensions_injective,
    present_extension_minimally,
    sample_column,
    solve_extension_column,
)
from tropmat.lab import open_question_search, run_pinned_rank2_probe
from tropmat.matrix import TropMatrix, all_maximal_minors
from tropmat.matroid import maximal_presentation, t_of
from tropmat.presentation import Presentation, is_minimal, minimize
from tropmat.trop import INF
from tropmat.valuated import check_pluecker_values, in_tropical_linear_space
from tropmat.verify import run_suite

F = Fraction

CORE_SIZES = [
    (3, 2, 12, 101),
    (4, 2, 12, 102),
    (4, 3, 12, 103),
    (5, 2, 12, 104),
    (5, 3, 12, 105),
    (6, 3, 12, 106),
    (6, 4, 10, 107),
    (7, 3, 10, 108),
    (8, 4, 10, 109),
    (5, 1, 6, 110),
    (4, 4, 6, 111),
]


def core_corpus():
    for n, d, count, seed in CORE_SIZES:
        spec = CorpusSpec(n=n, d=d, count=count, seed=seed)
        yield from corpus_presentations(spec)


def test_acceptance_stiefel_soundness():
    total = 0
    for _, pres in core_corpus():
        ok, witness = check_pluecker_values(pres.n, pres.d, pres.mu.values)
        assert ok, (pres.matrix.to_strings(), witness)
        total += 1
    assert total >= 100
    print(f"\nACCEPTANCE stiefel-soundness: PASS ({total}/{total} corpus matrices valuated)")


def test_acceptance_row_membership():
    total = 0
    for _, pres in core_corpus():
        for i in range(pres.d):
            ok, witness = in_tropical_linear_space(pres.mu, pres.matrix.rows[i])
            assert ok, (pres.matrix.to_strings(), i, witness)
        total += 1
    print(f"ACCEPTANCE row-membership: PASS (all rows of {total} presentations lie in Trop(mu))")


def test_acceptance_apex_support_is_maximal_presentation():
    total = 0
    for n, d, count, seed in CORE_SIZES:
        report = run_suite("fo-maximal", CorpusSpec(n=n, d=d, count=count, seed=seed))
        assert report["ok"], report["failures"][:1]
        total += report["total"]
    assert total >= 100
    print(f"ACCEPTANCE apex-support: PASS ({total}/{total} apex supports equal the maximal presentation)")


def test_acceptance_apex_multiplicities():
    total = 0
    for n, d, count, seed in CORE_SIZES:
        report = run_suite("decompose", CorpusSpec(n=n, d=d, count=count, seed=seed))
        assert report["ok"], report["failures"][:1]
        total += report["total"]
    assert total >= 100
    print(f"ACCEPTANCE apex-multiplicities: PASS ({total} decompositions, multiplicities = t(M), sum = d)")


def test_acceptance_injectivity_dichotomy():
    total = injective = 0
    for sub_seed, pres in core_corpus():
        verdict = extensions_injective(pres, trials=100, seed=sub_seed)
        minimal = is_minimal(pres)
        assert (verdict.verdict == "INJECTIVE") == minimal, pres.matrix.to_strings()
        if verdict.verdict == "COLLISION":
            row, x, y = verdict.collision
            assert x != y
            assert extension_values(pres, x) == extension_values(pres, y)
        else:
            injective += 1
        total += 1
    assert total >= 100
    print(
        f"ACCEPTANCE injectivity-dichotomy: PASS ({total} instances, "
        f"{injective} injective with certificates, {total - injective} verified collisions)"
    )


def test_acceptance_pinned_rank2_family():
    # exact image of the pinned matrix
    pres = Presentation(TropMatrix.from_strings([["1", "0", "0", "inf"], ["0", "0", "0", "0"]]))
    expected = {
        mask: (F(1) if mask == mask_of((0, 3)) else F(0))
        for mask in all_maximal_minors(pres.matrix)
    }
    assert pres.mu.values == expected

    # from the fixed minimal presentation, exactly two of the three
    # single-bump extensions are reachable
    base = Presentation(TropMatrix.from_strings([["0", "0", "inf"], ["0", "inf", "0"]]))
    reachable = []
    for i in range(3):
        target = {mask_of((j,)): (F(1) if j == i else F(0)) for j in range(3)}
        if solve_extension_column(base, target) is not None:
            reachable.append(i + 1)
    assert len(reachable) == 2, reachable
    print(f"ACCEPTANCE pinned-rank2-family: PASS (image exact; reachable bumps = {reachable})")


def test_acceptance_minimal_extension_presentation():
    master = random.Random(2024)
    done = 0
    while done < 100:
        rng = random.Random(master.getrandbits(48))
        m = rng.randrange(3, 7)  # total columns including *
        d = rng.randrange(1, min(m - 1, 4) + 1)
        B = gen_matrix(rng, d, m)
        presB = Presentation(B)
        star_bit = 1 << (m - 1)
        if all(b & star_bit for b in presB.mu.underlying().bases):
            continue
        res = present_extension_minimally(presB.mu, presB)
        assert is_minimal(res.base)
        assert extension_values(res.base, res.x) == presB.mu.values
        done += 1
    print(f"ACCEPTANCE minimal-extension-presentation: PASS ({done}/{done} re-presented minimally)")


def test_acceptance_meet_of_extensions():
    total = 0
    for n, d, count, seed in CORE_SIZES:
        report = run_suite("join", CorpusSpec(n=n, d=d, count=count, seed=seed))
        assert report["ok"], report["failures"][:1]
        total += report["total"]
    assert total >= 100
    print(f"ACCEPTANCE meet-of-extensions: PASS ({total} instances, meet law + semilattice laws exact)")


def test_acceptance_extension_of_minimal_is_minimal():
    master = random.Random(515)
    done = 0
    while done < 100:
        rng = random.Random(master.getrandbits(48))
        n = rng.randrange(2, 7)
        d = rng.randrange(1, min(n, 4) + 1)
        pres = minimize(Presentation(gen_matrix(rng, d, n)))
        x = sample_column(rng, d)
        assert is_minimal(extended_presentation(pres, x)), (pres.matrix.to_strings(), x)
        done += 1
    print(f"ACCEPTANCE extension-of-minimal: PASS ({done}/{done} extended presentations minimal)")


def test_acceptance_lab_soundness():
    runs = [(3, 2, 50, 71), (4, 2, 30, 72), (4, 3, 25, 73)]
    total = 0
    for n, d, trials, seed in runs:
        reports = open_question_search(n, d, trials, seed)
        again = open_question_search(n, d, trials, seed)
        assert json.dumps(reports, sort_keys=True) == json.dumps(again, sort_keys=True)
        for rep in reports:
            if rep["realizable"]:
                witness = TropMatrix.from_strings(rep["witness_matrix"]["rows"])
                from tropmat.serialize import values_to_json

                assert values_to_json(all_maximal_minors(witness)) == rep["min_values"]
            if rep["same_presentation"]:
                assert not rep["flagged"], rep
        total += len(reports)
    pinned = run_pinned_rank2_probe()
    assert pinned["realizable"] and not pinned["flagged"]
    assert total >= 100
    print(f"ACCEPTANCE lab-soundness: PASS ({total} trials, witnesses exact, byte-reproducible)")
