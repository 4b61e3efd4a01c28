"""Matroid machinery against hand-derived small cases."""

import random

import pytest

from tropmat.bits import elements_of, full_mask, mask_of
from tropmat.errors import InputError
from tropmat.matroid import (
    Matroid,
    cocircuits,
    connected_components,
    contained_in_presentation,
    contraction,
    cyclic_flats,
    deletion,
    direct_sum,
    flats,
    hyperplanes,
    loops,
    coloops,
    maximal_presentation,
    maximal_presentation_of,
    minimal_refinement,
    presents,
    t_of,
    transversal_from_system,
    weak_order_leq,
)

U23 = Matroid.uniform(2, 3)
U22 = Matroid.uniform(2, 2)
SINGLE = Matroid(3, [mask_of((0, 1))])  # one basis {1,2}; element 3 is a loop


def sets(masks):
    return [elements_of(m) for m in masks]


def test_construction_rejects_non_matroid():
    with pytest.raises(InputError, match="exchange"):
        Matroid(4, [mask_of((0, 1)), mask_of((2, 3))])


def test_rank_and_corank():
    assert U23.rank(mask_of((0,))) == 1
    assert U23.rank(full_mask(3)) == 2
    assert SINGLE.rank(mask_of((2,))) == 0
    assert U23.corank(0) == 2
    assert U23.corank(full_mask(3)) == 0
    assert SINGLE.corank(mask_of((0,))) == 1


def test_flats_families():
    assert sets(hyperplanes(U23)) == [(0,), (1,), (2,)]
    assert sets(cocircuits(U23)) == [(0, 1), (0, 2), (1, 2)]
    assert coloops(SINGLE) == (0, 1)
    assert loops(SINGLE) == (2,)


def test_flats_against_definition():
    # brute-force oracle: closure-stable subsets
    for M in (U23, U22, SINGLE):
        expected = tuple(
            s for s in range(1 << M.n) if M.closure(s) == s
        )
        assert flats(M) == expected


def test_cyclic_flats_examples():
    lat = cyclic_flats(U23)
    assert sets(lat.flats) == [(), (0, 1, 2)]
    assert lat.moebius[0] == 1
    assert lat.moebius[full_mask(3)] == -1
    assert sets(cyclic_flats(U22).flats) == [()]
    M = Matroid(4, [mask_of(b) for b in [(0, 2), (0, 3), (1, 2), (1, 3)]])
    assert sets(cyclic_flats(M).flats) == [(), (0, 1), (2, 3), (0, 1, 2, 3)]


def test_moebius_recursion():
    # sum over F' <= F of moebius(F') is 1 at the bottom and 0 elsewhere
    for M in (U23, U22, Matroid.uniform(3, 5)):
        lat = cyclic_flats(M)
        for f in lat.flats:
            total = sum(lat.moebius[g] for g in lat.flats if g & ~f == 0)
            assert total == (1 if f == lat.bottom else 0)


def test_t_of_examples():
    assert t_of(U23) == 2
    assert t_of(Matroid(1, [1])) == 1
    assert t_of(Matroid.uniform(1, 2)) == 1
    assert t_of(SINGLE) == 0  # has a loop


def test_minors_and_sums():
    assert contraction(U23, mask_of((0,))) == Matroid.uniform(1, 2)
    assert deletion(U23, mask_of((2,))) == U22
    assert direct_sum(Matroid(1, [1]), Matroid(1, [1])) == Matroid(2, [mask_of((0, 1))])
    with pytest.raises(InputError):
        deletion(SINGLE, mask_of((0,)))
    with pytest.raises(InputError):
        contraction(SINGLE, mask_of((2,)))


def test_weak_order():
    assert weak_order_leq(Matroid(3, [mask_of((0, 1))]), U23)
    assert not weak_order_leq(U23, Matroid(3, [mask_of((0, 1))]))
    assert weak_order_leq(U23, U23)
    with pytest.raises(InputError):
        weak_order_leq(U23, U22)


def test_transversal_from_system():
    assert transversal_from_system([mask_of((0, 1)), mask_of((0, 2))], 3) == U23
    assert transversal_from_system([1, 1], 2) is None
    assert transversal_from_system([full_mask(3), full_mask(3)], 3) == U23


def test_maximal_presentation_examples():
    got = maximal_presentation(U23, [mask_of((0, 1)), mask_of((0, 2))])
    assert sorted(got) == [full_mask(3), full_mask(3)]
    got = maximal_presentation(U22, [1, 2])
    assert sorted(got) == [full_mask(2), full_mask(2)]
    # fixpoint
    assert sorted(maximal_presentation(U23, [full_mask(3)] * 2)) == [full_mask(3)] * 2
    with pytest.raises(InputError):
        maximal_presentation(U23, [1, 2])  # presents U22-like, not U23


def test_maximal_presentation_of_matches_greedy():
    for M in (U23, U22, Matroid.uniform(3, 5), Matroid.uniform(2, 4)):
        some = minimal_refinement(M, maximal_presentation_of(M))
        assert sorted(maximal_presentation(M, some)) == sorted(maximal_presentation_of(M))


def test_minimal_refinement_examples():
    got = minimal_refinement(U23, [full_mask(3)] * 2)
    assert sorted(sets(got)) == [(0, 2), (1, 2)]  # deterministic greedy output
    cocircuit_set = set(cocircuits(U23))
    assert all(r in cocircuit_set for r in got)
    assert presents(got, U23)
    assert sets(minimal_refinement(U22, [full_mask(2)] * 2)) == [(1,), (0,)]
    minimal = [mask_of((0, 1)), mask_of((0, 2))]
    assert minimal_refinement(U23, minimal) == minimal  # fixpoint


def test_minimal_refinement_keep():
    got = minimal_refinement(U23, [full_mask(3)] * 2, keep=0)
    assert all(r & 1 for r in got)
    assert presents(got, U23)


def test_presentation_row_complements_are_flats():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randrange(2, 7)
        d = rng.randrange(1, min(n, 4) + 1)
        rows = [
            mask_of(e for e in range(n) if rng.random() < 0.7) or mask_of((rng.randrange(n),))
            for _ in range(d)
        ]
        M = transversal_from_system(rows, n)
        if M is None:
            continue
        for r in rows:
            assert M.is_flat(full_mask(n) & ~r)


def test_maximal_presentation_contains_every_presentation():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randrange(2, 6)
        d = rng.randrange(1, min(n, 3) + 1)
        rows = [
            mask_of(e for e in range(n) if rng.random() < 0.6) or mask_of((rng.randrange(n),))
            for _ in range(d)
        ]
        M = transversal_from_system(rows, n)
        if M is None:
            continue
        maxp = sorted(maximal_presentation(M, rows))
        # the original rows embed rowwise into the maximal rows
        assert contained_in_presentation(M, rows) or sorted(rows) == maxp


def test_connected_components():
    assert connected_components(U23) == (full_mask(3),)
    assert connected_components(U22) == (1, 2)
    M = Matroid(4, [mask_of(b) for b in [(0, 2), (0, 3), (1, 2), (1, 3)]])
    assert connected_components(M) == (mask_of((0, 1)), mask_of((2, 3)))
