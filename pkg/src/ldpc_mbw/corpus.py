"""Small degree sequences used by the exhaustive checks."""

from __future__ import annotations

from .degree_model import DegreeSequence, regular, validate

_EXPLICIT = [
    ([1, 1], [1, 1]),
    ([1, 1], [2]),
    ([2], [2]),
    ([2, 2], [2, 2]),
    ([2, 2, 2], [3, 3]),
    ([1, 2, 3], [3, 3]),
    ([1, 2], [3]),
    ([1, 1, 1], [3]),
    ([3, 3], [2, 2, 2]),
    ([2, 2, 2, 2], [4, 4]),
    ([1, 1, 2, 2, 2], [4, 4]),
    ([2, 2, 2, 2], [2, 2, 2, 2]),
    ([1, 2, 2, 3], [4, 4]),
    ([1, 2, 3, 4], [4, 6]),
    ([1, 1, 1, 1, 1, 1, 2], [2, 3, 3]),
]

_REGULAR = [
    (2, 6, 3),
    (4, 6, 3),
    (4, 3, 6),
    (6, 3, 6),
    (8, 2, 4),
    (6, 2, 3),
    (5, 3, 3),
]


def corpus() -> list[DegreeSequence]:
    seqs = [validate(lam, rho) for lam, rho in _EXPLICIT]
    seqs += [regular(n, dv, dc) for n, dv, dc in _REGULAR]
    return seqs


def enumerable(max_edges: int = 8) -> list[DegreeSequence]:
    return [ds for ds in corpus() if ds.edges <= max_edges]
