"""Exact minimum-weight perfect assignment on small square cost matrices.

Costs are tropical scalars (Fractions or INF); an INF entry is a missing
edge.  Returns the minimum total weight of a perfect matching, or INF when
no perfect matching uses only finite entries.  This is the classic
shortest-augmenting-path (Jonker–Volgenant style) algorithm run on exact
rationals, used as an alternative route to permutation enumeration and
cross-checked against it in the tests.
"""

from __future__ import annotations

from typing import Sequence

from .errors import InputError
from .trop import INF, ZERO, TropScalar


def min_assignment(cost: Sequence[Sequence[TropScalar]]) -> TropScalar:
    k = len(cost)
    if k == 0:
        return ZERO
    if any(len(row) != k for row in cost):
        raise InputError("cost matrix must be square")

    # potentials u (rows, 1-indexed scratch) and v (columns, 0 is a sentinel)
    u = [ZERO] * (k + 1)
    v = [ZERO] * (k + 1)
    match = [0] * (k + 1)  # match[col 1..k] = row currently assigned, 0 = free

    for row in range(1, k + 1):
        match[0] = row
        j0 = 0
        dist = [INF] * (k + 1)
        used = [False] * (k + 1)
        prev = [0] * (k + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta: TropScalar = INF
            j1 = -1
            for j in range(1, k + 1):
                if used[j]:
                    continue
                entry = cost[i0 - 1][j - 1]
                if entry != INF:
                    cur = entry - u[i0] - v[j]
                    if cur < dist[j]:
                        dist[j] = cur
                        prev[j] = j0
                if dist[j] < delta:
                    delta = dist[j]
                    j1 = j
            if delta == INF:
                return INF  # no augmenting path on finite edges
            for j in range(k + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                elif dist[j] != INF:
                    dist[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = prev[j0]
            match[j0] = match[j1]
            j0 = j1

    total: TropScalar = ZERO
    for j in range(1, k + 1):
        entry = cost[match[j] - 1][j - 1]
        if entry == INF:
            return INF
        total += entry
    return total
