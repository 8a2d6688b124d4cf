"""Minimum bisection width of small bipartite multigraphs.

A bisection splits the ``N = n + m`` vertices into sides whose sizes differ by
at most one; its width counts crossing edges with multiplicity.

``exact_mbw`` enumerates every admissible side as a bitmask (bit ``v`` set means
vertex ``v`` carries label 1). For even ``N`` vertex 0 is pinned to side 1,
which halves the work; for odd ``N`` side 1 is the larger side. The width of
membership vector ``x`` is ``x.d - x^T W x``; splitting the free vertices into
a low and a high block turns the cross term into one matrix product per
popcount group. Ties go to the numerically smallest mask, so the result does
not depend on evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any, Sequence

import numpy as np

from .config_model import Multigraph
from .errors import TooLarge, Unbalanced, ValidationError

DEFAULT_EXACT_CAP = 26


@dataclass(frozen=True)
class BisectionResult:
    side_assignment: tuple[int, ...]
    width: int
    exact: bool

    @property
    def assignment_hex(self) -> str:
        """Assignment as an integer with bit ``v`` = label of vertex ``v``."""
        return hex(sum(1 << v for v, s in enumerate(self.side_assignment) if s))

    def to_json(self) -> dict[str, Any]:
        return {
            "width": self.width,
            "exact": self.exact,
            "vertices": len(self.side_assignment),
            "assignment_hex": self.assignment_hex,
        }


def _check_balanced(assignment: Sequence[int], vertices: int) -> None:
    if len(assignment) != vertices:
        raise ValidationError(f"assignment has {len(assignment)} labels for {vertices} vertices")
    if any(a not in (0, 1) for a in assignment):
        raise ValidationError("assignment labels must be 0 or 1")
    ones = sum(assignment)
    if abs(vertices - 2 * ones) > 1:
        raise Unbalanced(f"sides of size {ones} and {vertices - ones}")


def width_of(g: Multigraph, assignment: Sequence[int]) -> int:
    _check_balanced(assignment, g.vertices)
    n = g.n_left
    return sum(k for (i, j), k in g.edge_mult.items() if assignment[i] != assignment[n + j])


def _masks_with_popcount(bits: int, k: int) -> np.ndarray:
    return np.array([sum(1 << b for b in c) for c in combinations(range(bits), k)], dtype=np.int64)


def _unpack(masks: np.ndarray, bits: int) -> np.ndarray:
    return ((masks[:, None] >> np.arange(bits)) & 1).astype(np.float64)


@lru_cache(maxsize=8)
def _layout(vertices: int) -> tuple[int, int, int, list[tuple[np.ndarray, np.ndarray]]]:
    """Split of the free vertices into a low and a high block, plus the
    (low masks, high masks) pairs whose popcounts add up to the side size."""
    k = (vertices + 1) // 2
    pinned = 1 if vertices % 2 == 0 else 0
    free = vertices - pinned
    need = k - pinned
    lo_bits = free // 2
    hi_bits = free - lo_bits
    groups = []
    for p in range(max(0, need - hi_bits), min(lo_bits, need) + 1):
        groups.append((_masks_with_popcount(lo_bits, p), _masks_with_popcount(hi_bits, need - p)))
    return pinned, lo_bits, hi_bits, groups


def balanced_masks(vertices: int) -> np.ndarray:
    """Sorted masks of every side-1 set the exhaustive search visits."""
    if vertices == 0:
        return np.zeros(1, dtype=np.int64)
    pinned, lo_bits, _, groups = _layout(vertices)
    full = [((hi[:, None] << lo_bits) | lo[None, :]).ravel() for lo, hi in groups]
    masks = (np.concatenate(full) << pinned) | pinned
    masks.sort()
    return masks


def exact_mbw(g: Multigraph, cap: int = DEFAULT_EXACT_CAP) -> BisectionResult:
    vertices = g.vertices
    if vertices > cap:
        raise TooLarge(f"{vertices} vertices exceed exhaustive cap {cap}")
    if vertices == 0:
        return BisectionResult((), 0, True)
    pinned, lo_bits, hi_bits, groups = _layout(vertices)
    w = g.weight_matrix().astype(np.float64)
    deg = w.sum(axis=1)
    f_idx = slice(0, pinned)
    lo_idx = slice(pinned, pinned + lo_bits)
    hi_idx = slice(pinned + lo_bits, vertices)
    # width(x) = x.deg - x^T W x, expanded over the pinned/low/high blocks
    const = deg[f_idx].sum() - w[f_idx, f_idx].sum()
    pin_lo = 2.0 * w[f_idx, lo_idx].sum(axis=0)
    pin_hi = 2.0 * w[f_idx, hi_idx].sum(axis=0)
    w_ll, w_hh, w_lh = w[lo_idx, lo_idx], w[hi_idx, hi_idx], w[lo_idx, hi_idx]

    best_width, best_mask = None, None
    for lo, hi in groups:
        x_lo = _unpack(lo, lo_bits)
        x_hi = _unpack(hi, hi_bits)
        a = x_lo @ (deg[lo_idx] - pin_lo) - np.einsum("ij,ij->i", x_lo @ w_ll, x_lo)
        b = x_hi @ (deg[hi_idx] - pin_hi) - np.einsum("ij,ij->i", x_hi @ w_hh, x_hi)
        widths = const + a[:, None] + b[None, :] - 2.0 * (x_lo @ w_lh) @ x_hi.T
        low = widths.min()
        if best_width is not None and low > best_width + 0.5:
            continue
        rows, cols = np.nonzero(widths <= low + 0.5)
        mask = int((((hi[cols] << lo_bits) | lo[rows]) << pinned | pinned).min())
        width = int(round(low))
        if best_width is None or width < best_width or (width == best_width and mask < best_mask):
            best_width, best_mask = width, mask
    assignment = tuple((best_mask >> v) & 1 for v in range(vertices))
    return BisectionResult(assignment, best_width, True)


def _local_search(w: np.ndarray, side: np.ndarray) -> np.ndarray:
    """Steepest-descent balanced pair swaps until no swap lowers the width."""
    while True:
        s = side.astype(np.int64)
        same = s[:, None] == s[None, :]
        # D[v] = external - internal weight of v
        d = np.where(same, -w, w).sum(axis=1)
        a = np.flatnonzero(side == 1)
        b = np.flatnonzero(side == 0)
        if a.size == 0 or b.size == 0:
            return side
        gain = d[a][:, None] + d[b][None, :] - 2 * w[np.ix_(a, b)]
        idx = int(np.argmax(gain))
        if gain.flat[idx] <= 0:
            return side
        u, v = a[idx // b.size], b[idx % b.size]
        side = side.copy()
        side[u], side[v] = 0, 1


def heuristic_mbw(g: Multigraph, restarts: int = 8, seed: int = 0) -> BisectionResult:
    """Upper bound on the minimum bisection width from random restarts of pair-swap descent."""
    if restarts < 1:
        raise ValidationError("restarts must be >= 1")
    vertices = g.vertices
    if vertices == 0:
        return BisectionResult((), 0, False)
    w = g.weight_matrix()
    rng = np.random.Generator(np.random.PCG64(seed))
    k = (vertices + 1) // 2
    best: tuple[int, tuple[int, ...]] | None = None
    for _ in range(restarts):
        side = np.zeros(vertices, dtype=np.int8)
        side[rng.permutation(vertices)[:k]] = 1
        side = _local_search(w, side)
        assignment = tuple(int(v) for v in side)
        cand = (width_of(g, assignment), assignment)
        if best is None or cand < best:
            best = cand
    return BisectionResult(best[1], best[0], False)


def mbw(g: Multigraph, cap: int = DEFAULT_EXACT_CAP, restarts: int = 8, seed: int = 0) -> BisectionResult:
    """Exact width when the graph fits under ``cap``, heuristic upper bound otherwise."""
    if g.vertices <= cap:
        return exact_mbw(g, cap)
    return heuristic_mbw(g, restarts, seed)
