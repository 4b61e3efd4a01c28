"""Exact min-plus linear algebra and transversal valuated matroids.

Core layers:

- :mod:`tropmat.trop` / :mod:`tropmat.matrix` — exact tropical scalars,
  vectors, matrices and min-plus minors;
- :mod:`tropmat.matroid` — classical matroids and set-system presentations;
- :mod:`tropmat.valuated` — valuated matroids as representative functions;
- :mod:`tropmat.presentation` — the tropical Stiefel map, apex matrices,
  decompositions, minimality;
- :mod:`tropmat.extension` — single-element extensions of presentations;
- :mod:`tropmat.lab` — experimental search on coordinatewise minima of
  extensions from different presentations;
- :mod:`tropmat.service` / :mod:`tropmat.cli` — HTTP service and the thin
  command-line client in front of it.
"""

from .errors import InputError, TheoremViolation
from .matrix import TropMatrix, all_maximal_minors, tropical_minor
from .matroid import Matroid, transversal_from_system
from .presentation import Presentation, compute_dapx, decompose, is_minimal, minimize, stiefel
from .trop import INF, TropScalar, format_scalar, parse_scalar, trop_add, trop_mul
from .valuated import ValuatedMatroid, initial_matroid, representatives_equal

__all__ = [
    "INF",
    "InputError",
    "Matroid",
    "Presentation",
    "TheoremViolation",
    "TropMatrix",
    "TropScalar",
    "ValuatedMatroid",
    "all_maximal_minors",
    "compute_dapx",
    "decompose",
    "format_scalar",
    "initial_matroid",
    "is_minimal",
    "minimize",
    "parse_scalar",
    "representatives_equal",
    "stiefel",
    "transversal_from_system",
    "trop_add",
    "trop_mul",
    "tropical_minor",
]
