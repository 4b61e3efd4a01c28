"""JSON wire formats.

External ground sets are 1-based integer element ids (arbitrary string
labels are carried alongside and mapped at the CLI/service boundary; the
extension element is always labelled "*").  Scalars travel as 'p/q' or
decimal strings with 'inf' for infinity.
"""

from __future__ import annotations

from typing import Mapping, Optional, Sequence

from .bits import elements_of, full_mask, mask_of, subsets_of_size
from .errors import InputError
from .matrix import TropMatrix
from .matroid import Matroid
from .presentation import ApexDecomposition
from .trop import INF, TropScalar, format_scalar, parse_scalar
from .valuated import ValuatedMatroid


def mask_to_list(mask: int) -> list[int]:
    return [e + 1 for e in elements_of(mask)]


def list_to_mask(items: Sequence[int], n: int) -> int:
    mask = 0
    for e in items:
        if not 1 <= int(e) <= n:
            raise InputError(f"element {e} outside 1..{n}")
        mask |= 1 << (int(e) - 1)
    return mask


def subset_key(mask: int) -> str:
    return ",".join(str(e + 1) for e in elements_of(mask))


def parse_subset_key(key: str, n: int) -> int:
    try:
        items = [int(tok) for tok in key.split(",") if tok.strip() != ""]
    except ValueError:
        raise InputError(f"bad subset key {key!r}") from None
    return list_to_mask(items, n)


def default_labels(n: int, star: bool = False) -> list[str]:
    labels = [str(i + 1) for i in range(n - 1 if star else n)]
    if star:
        labels.append("*")
    return labels


def matrix_to_json(A: TropMatrix, labels: Optional[Sequence[str]] = None) -> dict:
    return {
        "d": A.d,
        "n": A.n,
        "rows": A.to_strings(),
        "labels": list(labels) if labels is not None else default_labels(A.n),
    }


def matrix_from_json(obj: Mapping) -> TropMatrix:
    try:
        rows = obj["rows"]
    except (TypeError, KeyError):
        raise InputError("matrix JSON needs a 'rows' field") from None
    A = TropMatrix.from_strings(rows)
    if obj.get("d") is not None and int(obj["d"]) != A.d:
        raise InputError(f"declared d={obj['d']} but matrix has {A.d} rows")
    if obj.get("n") is not None and int(obj["n"]) != A.n:
        raise InputError(f"declared n={obj['n']} but matrix has {A.n} columns")
    return A


def matroid_to_json(M: Matroid) -> dict:
    return {"n": M.n, "d": M.d, "bases": [mask_to_list(b) for b in M.bases]}


def matroid_from_json(obj: Mapping) -> Matroid:
    try:
        n = int(obj["n"])
        bases = obj["bases"]
    except (TypeError, KeyError, ValueError):
        raise InputError("matroid JSON needs 'n' and 'bases'") from None
    return Matroid(n, [list_to_mask(b, n) for b in bases])


def relative_matroid_to_json(M: Matroid, ground: Sequence[int]) -> dict:
    """A matroid living on a subset of the global ground set (1-based labels)."""
    return {
        "ground": [e + 1 for e in ground],
        "bases": [[ground[i] + 1 for i in elements_of(b)] for b in M.bases],
    }


def system_to_json(sets: Sequence[int]) -> dict:
    return {"sets": [mask_to_list(s) for s in sets]}


def system_from_json(obj: Mapping, n: int) -> list[int]:
    try:
        sets = obj["sets"]
    except (TypeError, KeyError):
        raise InputError("set system JSON needs a 'sets' field") from None
    return [list_to_mask(s, n) for s in sets]


def values_to_json(values: Mapping[int, TropScalar]) -> dict[str, str]:
    """Finite entries only; omitted subsets are INF."""
    return {
        subset_key(mask): format_scalar(v)
        for mask, v in sorted(values.items())
        if v != INF
    }


def valuated_to_json(mu: ValuatedMatroid, labels: Optional[Sequence[str]] = None) -> dict:
    return {
        "n": mu.n,
        "d": mu.d,
        "values": values_to_json(mu.values),
        "labels": list(labels) if labels is not None else default_labels(mu.n),
    }


def valuated_from_json(obj: Mapping) -> ValuatedMatroid:
    try:
        n = int(obj["n"])
        d = int(obj["d"])
        raw = obj["values"]
    except (TypeError, KeyError, ValueError):
        raise InputError("valuated matroid JSON needs 'n', 'd', 'values'") from None
    values: dict[int, TropScalar] = {
        mask: INF for mask in subsets_of_size(full_mask(n), d)
    }
    for key, text in raw.items():
        mask = parse_subset_key(key, n)
        if mask not in values:
            raise InputError(f"subset {key!r} does not have size {d}")
        values[mask] = parse_scalar(text)
    return ValuatedMatroid(n, d, values)


def column_to_json(x: Sequence[TropScalar]) -> dict:
    return {"x": [format_scalar(a) for a in x]}


def column_from_json(obj: Mapping, d: int) -> tuple[TropScalar, ...]:
    try:
        entries = obj["x"]
    except (TypeError, KeyError):
        raise InputError("extension column JSON needs an 'x' field") from None
    if len(entries) != d:
        raise InputError(f"column has {len(entries)} entries, expected {d}")
    return tuple(parse_scalar(s) for s in entries)


def decomposition_to_json(dec: ApexDecomposition) -> dict:
    rows = []
    for row in dec.rows:
        rows.append(
            {
                "F": mask_to_list(row.f_mask),
                "apex": [format_scalar(a) for a in row.apex],
                "matroid": relative_matroid_to_json(row.matroid, row.ground),
                "lambda": format_scalar(row.lam),
                "J": mask_to_list(row.j_mask),
                "alpha": {str(j + 1): format_scalar(a) for j, a in sorted(row.alpha.items())},
            }
        )
    return {
        "matrix": matrix_to_json(dec.matrix),
        "rows": rows,
        "dmat": [
            {
                "matroid": relative_matroid_to_json(m, elements_of(full_mask(dec.mu.n) & ~f)),
                "F": mask_to_list(f),
                "multiplicity": count,
            }
            for m, f, count in dec.multiplicities()
        ],
    }
