"""Uniform configuration model: socket pairings and the multigraphs they induce.

Sockets are numbered node-major over the sorted degree sequence, so left node
``i`` owns sockets ``sum(lam[:i]) .. sum(lam[:i+1]) - 1``; right sockets
likewise. A configuration is a permutation ``pairing`` with
``pairing[left_socket] = right_socket``.

Randomness: ``sample`` seeds a PCG64 generator directly with the 64-bit seed.
Independent trials derive their seeds with :func:`mix`, a SplitMix64 finaliser
over ``master_seed`` and the trial index, so a trial's stream does not depend on
which worker runs it.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Any, Iterator, Mapping

import numpy as np

from .degree_model import DegreeSequence
from .errors import TooLarge, ValidationError

DEFAULT_ENUM_CAP = 9

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def mix(master_seed: int, index: int) -> int:
    """Derive the 64-bit seed of trial ``index`` from ``master_seed``."""
    return _splitmix64(_splitmix64(master_seed & _MASK64) ^ (index & _MASK64))


def socket_owners(degrees: tuple[int, ...]) -> np.ndarray:
    return np.repeat(np.arange(len(degrees)), degrees)


@dataclass(frozen=True)
class Configuration:
    degrees: DegreeSequence
    pairing: tuple[int, ...]

    def __post_init__(self) -> None:
        e = self.degrees.edges
        if len(self.pairing) != e or sorted(self.pairing) != list(range(e)):
            raise ValidationError("pairing is not a permutation of the sockets")

    def to_json(self) -> dict[str, Any]:
        return {"degrees": self.degrees.to_json(), "pairing": list(self.pairing)}


@dataclass(frozen=True)
class Multigraph:
    """Bipartite multigraph. Left node ``i`` is vertex ``i``; right node ``j`` is vertex ``n_left + j``."""

    n_left: int
    n_right: int
    edge_mult: Mapping[tuple[int, int], int]

    @property
    def vertices(self) -> int:
        return self.n_left + self.n_right

    @property
    def edge_units(self) -> int:
        return sum(self.edge_mult.values())

    def left_degrees(self) -> list[int]:
        deg = [0] * self.n_left
        for (i, _), k in self.edge_mult.items():
            deg[i] += k
        return deg

    def right_degrees(self) -> list[int]:
        deg = [0] * self.n_right
        for (_, j), k in self.edge_mult.items():
            deg[j] += k
        return deg

    def key(self) -> tuple[int, int, tuple[tuple[int, int, int], ...]]:
        """Hashable canonical form (labelled, not up to isomorphism)."""
        return self.n_left, self.n_right, tuple(sorted((i, j, k) for (i, j), k in self.edge_mult.items()))

    def weight_matrix(self) -> np.ndarray:
        """Symmetric (n+m) x (n+m) matrix of edge multiplicities."""
        w = np.zeros((self.vertices, self.vertices), dtype=np.int64)
        for (i, j), k in self.edge_mult.items():
            w[i, self.n_left + j] += k
            w[self.n_left + j, i] += k
        return w

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n_left, "m": self.n_right, "edges": [list(e) for e in self.key()[2]]}


def multigraph_from_json_obj(obj: Any) -> Multigraph:
    """Parse ``{"n": ..., "m": ..., "edges": [[i, j, mult], ...]}``; repeated pairs accumulate."""
    if not isinstance(obj, Mapping) or not {"n", "m", "edges"} <= set(obj):
        raise ValidationError("edge list must be an object with keys n, m, edges")
    n, m, edges = obj["n"], obj["m"], obj["edges"]
    if not (isinstance(n, int) and isinstance(m, int) and n >= 0 and m >= 0):
        raise ValidationError("n and m must be nonnegative integers")
    if not isinstance(edges, list):
        raise ValidationError("'edges' must be a list")
    mult: Counter[tuple[int, int]] = Counter()
    for e in edges:
        if not isinstance(e, list) or len(e) not in (2, 3) or not all(isinstance(x, int) for x in e):
            raise ValidationError(f"bad edge entry {e!r}")
        i, j, k = (e + [1])[:3]
        if not (0 <= i < n and 0 <= j < m) or k < 0:
            raise ValidationError(f"edge {e!r} out of range")
        if k:
            mult[(i, j)] += k
    return Multigraph(n, m, dict(sorted(mult.items())))


def sample(ds: DegreeSequence, seed: int) -> Configuration:
    rng = np.random.Generator(np.random.PCG64(seed & _MASK64))
    # Generator.permutation is a Fisher-Yates shuffle
    perm = rng.permutation(ds.edges)
    return Configuration(ds, tuple(int(p) for p in perm))


def enumerate_configurations(ds: DegreeSequence, cap: int = DEFAULT_ENUM_CAP) -> Iterator[Configuration]:
    """Every pairing exactly once, in lexicographic order of the permutation."""
    if ds.edges > cap:
        raise TooLarge(f"|E|={ds.edges} exceeds enumeration cap {cap}")
    for perm in itertools.permutations(range(ds.edges)):
        yield Configuration(ds, perm)


def pairing_multiplicities(ds: DegreeSequence, pairing: tuple[int, ...]) -> dict[tuple[int, int], int]:
    left = socket_owners(ds.lam)
    right = socket_owners(ds.rho)
    counts = Counter(zip(left.tolist(), right[list(pairing)].tolist()))
    return dict(sorted(counts.items()))


def to_multigraph(c: Configuration) -> Multigraph:
    return Multigraph(c.degrees.n, c.degrees.m, pairing_multiplicities(c.degrees, c.pairing))


def simplify(g: Multigraph) -> Multigraph:
    """Drop even multi-edges, collapse odd ones to a single edge."""
    return Multigraph(g.n_left, g.n_right, {e: 1 for e, k in g.edge_mult.items() if k % 2 == 1})


def removed_edge_units(g: Multigraph) -> int:
    """Edge units that :func:`simplify` removes: k for even k, k - 1 for odd k."""
    return sum(k if k % 2 == 0 else k - 1 for k in g.edge_mult.values())
