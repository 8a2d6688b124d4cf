"""Exhaustive and Monte Carlo checks of the counting machinery.

* :func:`enumerate_bisection_distribution` walks every pairing of a small
  degree sequence and tallies how many configurations have a bisection of
  width <= a, next to the counting bound for the same a.
* :func:`mc_mbw_trend` samples configurations for a growing family and records
  how often the minimum bisection width clears beta*n.
* :func:`socket_bound_check` tests the half-vertex socket inequality.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np

from . import bisection, bounds
from .config_model import (
    DEFAULT_ENUM_CAP,
    Multigraph,
    mix,
    pairing_multiplicities,
    removed_edge_units,
    sample,
    simplify,
    to_multigraph,
)
from .degree_model import DegreeSequence, condition_value, ensemble_stats, solve_beta
from .errors import DegenerateSigma, TooLarge, ValidationError

EXHAUSTIVE_SUBSET_LIMIT = 16


@dataclass(frozen=True)
class TrialRecord:
    seed: int
    n: int
    m: int
    mbw: int
    exact: bool
    multi_edge_units_removed: int
    beta_n_threshold: float
    # None when the width is only a heuristic upper bound
    passed: bool | None
    mbw_multigraph: int = 0
    mbw_simplified: int = 0
    edges: int = 0
    beta: float = 0.0
    condition_met: bool = True
    graph: str = "multigraph"

    FIELDS = (
        "seed", "n", "m", "edges", "graph", "mbw", "exact", "mbw_multigraph", "mbw_simplified",
        "multi_edge_units_removed", "beta", "beta_n_threshold", "condition_met", "passed",
    )

    def to_row(self) -> dict[str, Any]:
        return {k: getattr(self, k) for k in self.FIELDS}


@dataclass
class EnumerationReport:
    degrees: dict[str, list[int]]
    total_configs: int
    sigma_n: str
    delta_n: str
    mbw_histogram: dict[int, int]
    count_leq_a: list[int]
    bound_leq_a: list[float | None]
    log_bound_leq_a: list[float | None]
    condition_violated: list[bool] = field(default_factory=list)

    def empirical(self, a: int) -> Fraction:
        return Fraction(self.count_leq_a[a], self.total_configs)

    def to_json(self) -> dict[str, Any]:
        out = dataclasses.asdict(self)
        out["mbw_histogram"] = {str(k): v for k, v in sorted(self.mbw_histogram.items())}
        out["rows"] = [
            {
                "a": a,
                "count_leq_a": self.count_leq_a[a],
                "empirical": self.count_leq_a[a] / self.total_configs,
                "log_bound": self.log_bound_leq_a[a],
                "bound": self.bound_leq_a[a],
                "condition_violated": self.condition_violated[a],
            }
            for a in range(len(self.count_leq_a))
        ]
        return out


def mbw_histogram(ds: DegreeSequence, cap: int = DEFAULT_ENUM_CAP,
                  exact_cap: int = bisection.DEFAULT_EXACT_CAP) -> Counter[int]:
    """Exact minimum bisection width of every configuration, tallied."""
    if ds.edges > cap:
        raise TooLarge(f"|E|={ds.edges} exceeds enumeration cap {cap}")
    cache: dict[tuple, int] = {}
    hist: Counter[int] = Counter()
    for perm in itertools.permutations(range(ds.edges)):
        mult = pairing_multiplicities(ds, perm)
        key = tuple(mult.items())
        width = cache.get(key)
        if width is None:
            width = bisection.exact_mbw(Multigraph(ds.n, ds.m, mult), exact_cap).width
            cache[key] = width
        hist[width] += 1
    return hist


def enumerate_bisection_distribution(ds: DegreeSequence, a_max: int, cap: int = DEFAULT_ENUM_CAP,
                                     exact_cap: int = bisection.DEFAULT_EXACT_CAP) -> EnumerationReport:
    if a_max < 0:
        raise ValidationError("a_max must be >= 0")
    stats = ensemble_stats(ds)
    hist = mbw_histogram(ds, cap, exact_cap)
    total = math.factorial(ds.edges)
    counts, bound_vals, log_vals, violated = [], [], [], []
    running = 0
    for a in range(a_max + 1):
        running += hist.get(a, 0)
        counts.append(running)
        if a < stats.sigma_n:
            lb = bounds.lemma7_log_bound(stats, ds.n, a)
            log_vals.append(lb)
            bound_vals.append(bounds.clamped_probability(lb))
            violated.append(False)
        else:
            log_vals.append(None)
            bound_vals.append(None)
            violated.append(True)
    return EnumerationReport(
        degrees=ds.to_json(),
        total_configs=total,
        sigma_n=str(stats.sigma_n),
        delta_n=str(stats.delta_n),
        mbw_histogram=dict(hist),
        count_leq_a=counts,
        bound_leq_a=bound_vals,
        log_bound_leq_a=log_vals,
        condition_violated=violated,
    )


def _resolve_beta(ds: DegreeSequence, beta: float | None) -> tuple[float, bool]:
    stats = ensemble_stats(ds)
    try:
        met = condition_value(stats) < 0.0
    except DegenerateSigma:
        met = False
    if beta is not None:
        return beta, met
    solved = solve_beta(stats) if met else None
    return (solved if solved is not None else 0.0), met


def _run_trial(ds: DegreeSequence, seed: int, beta: float, condition_met: bool, exact_cap: int,
               restarts: int, use_simplified: bool) -> TrialRecord:
    g = to_multigraph(sample(ds, seed))
    g_simple = simplify(g)
    r_multi = bisection.mbw(g, exact_cap, restarts, seed)
    r_simple = bisection.mbw(g_simple, exact_cap, restarts, seed)
    primary = r_simple if use_simplified else r_multi
    threshold = beta * ds.n
    return TrialRecord(
        seed=seed,
        n=ds.n,
        m=ds.m,
        mbw=primary.width,
        exact=primary.exact,
        multi_edge_units_removed=removed_edge_units(g),
        beta_n_threshold=threshold,
        passed=(primary.width >= threshold) if primary.exact else None,
        mbw_multigraph=r_multi.width,
        mbw_simplified=r_simple.width,
        edges=ds.edges,
        beta=beta,
        condition_met=condition_met,
        graph="simplified" if use_simplified else "multigraph",
    )


def mc_mbw_trend(ds_family: Sequence[DegreeSequence], trials: int, master_seed: int, *,
                 threads: int = 1, exact_cap: int = bisection.DEFAULT_EXACT_CAP, restarts: int = 8,
                 use_simplified: bool = False, beta: float | None = None) -> list[TrialRecord]:
    """Sample ``trials`` configurations per family member.

    Trial ``t`` of every member uses seed ``mix(master_seed, t)``; records come
    back in (member, trial) order whatever the thread count.
    """
    if trials < 1:
        raise ValidationError("trials must be >= 1")
    if threads < 1:
        raise ValidationError("threads must be >= 1")
    tasks = []
    for ds in ds_family:
        b, met = _resolve_beta(ds, beta)
        for t in range(trials):
            tasks.append((ds, mix(master_seed, t), b, met))

    def run(task: tuple) -> TrialRecord:
        ds, seed, b, met = task
        return _run_trial(ds, seed, b, met, exact_cap, restarts, use_simplified)

    if threads == 1:
        return [run(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(run, tasks))


def summarize_trend(records: Iterable[TrialRecord]) -> list[dict[str, Any]]:
    """Per-n aggregate: fraction of exact trials with mbw >= beta*n, and multi-edge share."""
    by_n: dict[tuple[int, int], list[TrialRecord]] = {}
    for r in records:
        by_n.setdefault((r.n, r.m), []).append(r)
    rows = []
    prev = None
    for (n, m), recs in sorted(by_n.items()):
        exact = [r for r in recs if r.exact]
        frac = (sum(bool(r.passed) for r in exact) / len(exact)) if exact else None
        rows.append({
            "n": n,
            "m": m,
            "trials": len(recs),
            "exact_trials": len(exact),
            "beta": recs[0].beta,
            "beta_n_threshold": recs[0].beta_n_threshold,
            "condition_met": recs[0].condition_met,
            "fraction_passed": frac,
            "mean_mbw": float(np.mean([r.mbw for r in recs])),
            "mean_mbw_multigraph": float(np.mean([r.mbw_multigraph for r in recs])),
            "mean_mbw_simplified": float(np.mean([r.mbw_simplified for r in recs])),
            "mean_removed_fraction": float(np.mean([r.multi_edge_units_removed / r.edges for r in recs])),
            "non_decreasing": prev is None or frac is None or frac >= prev,
        })
        if frac is not None:
            prev = frac
    return rows


def _half_sizes(vertices: int) -> set[int]:
    return {vertices // 2, (vertices + 1) // 2}


def socket_bound_check(ds: DegreeSequence, samples: int = 1000, seed: int = 0,
                       delta_n: Fraction | int | None = None) -> bool:
    """True iff no half-size vertex set has both left and right socket counts above ``delta*n``.

    Exhaustive over all subsets of size floor/ceil((n+m)/2) when n+m <= 16,
    otherwise ``samples`` random subsets of each size. ``delta_n`` overrides the
    computed threshold (used to check that the checker can fail).
    """
    limit = ensemble_stats(ds).delta_n if delta_n is None else Fraction(delta_n)
    degrees = list(ds.lam) + list(ds.rho)
    n, vertices = ds.n, ds.vertices

    def ok(subset: Iterable[int]) -> bool:
        left = right = 0
        for v in subset:
            if v < n:
                left += degrees[v]
            else:
                right += degrees[v]
        return min(left, right) <= limit

    if vertices <= EXHAUSTIVE_SUBSET_LIMIT:
        return all(ok(c) for size in _half_sizes(vertices) for c in itertools.combinations(range(vertices), size))
    rng = np.random.Generator(np.random.PCG64(seed))
    for size in sorted(_half_sizes(vertices)):
        for _ in range(samples):
            if not ok(rng.choice(vertices, size, replace=False).tolist()):
                return False
    return True
