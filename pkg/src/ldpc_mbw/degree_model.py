"""Degree sequences, ensemble statistics and the capacity condition.

The two socket statistics are

    delta * n = max(top-half left socket sum, top-half right socket sum)
    sigma * n = |E| - delta * n

where a "top half" is the ceil(k/2) largest degrees on a side with k nodes.
Both are kept as exact fractions; only the entropy/log expressions are
evaluated in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping

import numpy as np

from .errors import BetaOutOfRange, DegenerateSigma, SocketMismatch, ValidationError, ZeroDegree


@dataclass(frozen=True)
class DegreeSequence:
    """Left (variable) and right (check) node degrees, sorted ascending."""

    lam: tuple[int, ...]
    rho: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.lam)

    @property
    def m(self) -> int:
        return len(self.rho)

    @property
    def edges(self) -> int:
        return sum(self.lam)

    @property
    def vertices(self) -> int:
        return self.n + self.m

    def to_json(self) -> dict[str, Any]:
        return {"lambda": list(self.lam), "rho": list(self.rho)}


@dataclass(frozen=True)
class EnsembleStats:
    n: int
    m: int
    edges: int
    delta_l: Fraction
    sigma_l: Fraction
    delta_r: Fraction
    sigma_r: Fraction
    delta: Fraction
    sigma: Fraction
    # the counting argument assumes m <= n; formulas are still evaluated
    n_less_than_m: bool = False

    @property
    def delta_n(self) -> Fraction:
        return self.delta * self.n

    @property
    def sigma_n(self) -> Fraction:
        return self.sigma * self.n

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"n": self.n, "m": self.m, "edges": self.edges}
        for name in ("delta_l", "sigma_l", "delta_r", "sigma_r", "delta", "sigma"):
            value = getattr(self, name)
            out[name] = float(value)
            out[name + "_exact"] = str(value)
        out["delta_n"] = str(self.delta_n)
        out["sigma_n"] = str(self.sigma_n)
        out["warning_n_less_than_m"] = self.n_less_than_m
        return out


def validate(lam: Iterable[int], rho: Iterable[int]) -> DegreeSequence:
    lam = list(lam)
    rho = list(rho)
    if not lam or not rho:
        raise ValidationError("degree lists must be nonempty")
    for d in lam + rho:
        if isinstance(d, bool) or not isinstance(d, (int, np.integer)):
            raise ValidationError(f"degree {d!r} is not an integer")
    if min(lam + rho) < 1:
        raise ZeroDegree("all degrees must be >= 1")
    if sum(lam) != sum(rho):
        raise SocketMismatch(f"left sockets {sum(lam)} != right sockets {sum(rho)}")
    return DegreeSequence(tuple(sorted(int(d) for d in lam)), tuple(sorted(int(d) for d in rho)))


def regular(n: int, dv: int, dc: int) -> DegreeSequence:
    """(dv, dc)-regular sequence with n left nodes and m = n*dv/dc right nodes."""
    if n < 1 or dv < 1 or dc < 1:
        raise ValidationError("n, dv, dc must be positive")
    if (n * dv) % dc:
        raise ValidationError(f"m = {n}*{dv}/{dc} is not an integer")
    return validate([dv] * n, [dc] * (n * dv // dc))


def from_json_obj(obj: Any) -> DegreeSequence:
    """Parse ``{"lambda": [...], "rho": [...]}`` or ``{"n": N, "dv": DV, "dc": DC}``."""
    if not isinstance(obj, Mapping):
        raise ValidationError("degree sequence must be a JSON object")
    if "lambda" in obj or "rho" in obj:
        lam, rho = obj.get("lambda"), obj.get("rho")
        if not isinstance(lam, list) or not isinstance(rho, list):
            raise ValidationError("'lambda' and 'rho' must both be lists")
        return validate(lam, rho)
    if {"n", "dv", "dc"} <= set(obj):
        vals = [obj["n"], obj["dv"], obj["dc"]]
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in vals):
            raise ValidationError("'n', 'dv', 'dc' must be integers")
        return regular(*vals)
    raise ValidationError("expected keys lambda/rho or n/dv/dc")


def family_from_json_obj(obj: Any) -> list[DegreeSequence]:
    """A list of sequences: a JSON array, ``{"family": [...]}``, or regular shorthand with a list ``n``."""
    if isinstance(obj, list):
        return [from_json_obj(o) for o in obj]
    if isinstance(obj, Mapping) and "family" in obj:
        if not isinstance(obj["family"], list):
            raise ValidationError("'family' must be a list")
        return [from_json_obj(o) for o in obj["family"]]
    if isinstance(obj, Mapping) and isinstance(obj.get("n"), list):
        return [from_json_obj({**obj, "n": n}) for n in obj["n"]]
    return [from_json_obj(obj)]


def _top_half_sum(degrees: tuple[int, ...]) -> int:
    k = len(degrees)
    return sum(degrees[k - (k + 1) // 2:])


def ensemble_stats(ds: DegreeSequence) -> EnsembleStats:
    n, m, e = ds.n, ds.m, ds.edges
    top_l = _top_half_sum(ds.lam)
    top_r = _top_half_sum(ds.rho)
    delta_l = Fraction(top_l, n)
    delta_r = Fraction(top_r, m)
    delta = Fraction(max(top_l, top_r), n)
    return EnsembleStats(
        n=n,
        m=m,
        edges=e,
        delta_l=delta_l,
        sigma_l=Fraction(e, n) - delta_l,
        delta_r=delta_r,
        sigma_r=Fraction(e, m) - delta_r,
        delta=delta,
        sigma=Fraction(e, n) - delta,
        n_less_than_m=n < m,
    )


def entropy(x: float) -> float:
    """Binary entropy in nats, with H(0) = H(1) = 0."""
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log(x) - (1.0 - x) * math.log1p(-x)


def _as_pair(stats: EnsembleStats | tuple[Any, Any]) -> tuple[float, float]:
    if isinstance(stats, EnsembleStats):
        return float(stats.delta), float(stats.sigma)
    d, s = stats
    return float(d), float(s)


def condition_value(stats: EnsembleStats | tuple[Any, Any]) -> float:
    """2H(1/2) + delta ln(delta/(delta+sigma)) + sigma ln(sigma/(delta+sigma)).

    Negative values mean small bisections become vanishingly unlikely.
    Accepts an :class:`EnsembleStats` or a bare ``(delta, sigma)`` pair.
    """
    d, s = _as_pair(stats)
    if s <= 0.0:
        raise DegenerateSigma("sigma must be > 0")
    if d <= 0.0:
        raise ValidationError("delta must be > 0")
    t = d + s
    return 2.0 * entropy(0.5) + d * math.log(d / t) + s * math.log(s / t)


def beta_condition_value(stats: EnsembleStats | tuple[Any, Any], beta: float) -> float:
    d, s = _as_pair(stats)
    beta = float(beta)
    if not 0.0 < beta < s:
        raise BetaOutOfRange(f"beta={beta} outside (0, {s})")
    t = d + s
    return (
        2.0 * entropy(0.5)
        + 4.0 * entropy(beta / t)
        + beta * math.log(beta / (s - beta))
        + d * math.log(d / t)
        + s * math.log((s - beta) / t)
    )


def solve_beta(
    stats: EnsembleStats | tuple[Any, Any], tolerance: float = 1e-9, grid_points: int = 400
) -> float | None:
    """Largest beta in (0, sigma) with ``beta_condition_value <= 0``.

    Scans a grid that is geometric towards both ends of the interval, takes
    the last sign change and bisects it down to ``tolerance``. The returned
    point is the lower end of the final bracket, so its value is <= 0.

    The beta-condition stays finite as beta -> sigma (its limit is
    ``2H(1/2) + (4 - delta - sigma) H(sigma/(delta+sigma))``), so when the
    function is still non-positive at the top of the grid the bracket is
    closed by sigma itself and the result lies within ``tolerance`` of it.
    Returns None when the beta -> 0 condition itself is not negative.
    """
    if tolerance <= 0:
        raise ValidationError("tolerance must be > 0")
    d, s = _as_pair(stats)
    if s <= 0.0 or condition_value((d, s)) >= 0.0:
        return None

    f = lambda b: beta_condition_value((d, s), b)  # noqa: E731
    offsets = np.geomspace(1e-12, 0.5, grid_points)
    grid = np.unique(np.concatenate([s * offsets, s - s * offsets]))
    grid = grid[(grid > 0.0) & (grid < s)]
    values = np.array([f(b) for b in grid])
    nonpos = np.flatnonzero(values <= 0.0)
    if nonpos.size == 0:
        return None
    i = int(nonpos[-1])
    lo = float(grid[i])
    hi = float(grid[i + 1]) if i + 1 < grid.size else s
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return lo


def beta_limit_at_sigma(stats: EnsembleStats | tuple[Any, Any]) -> float:
    """Value of the beta-condition in the limit beta -> sigma from below."""
    d, s = _as_pair(stats)
    t = d + s
    return 2.0 * entropy(0.5) + (4.0 - t) * entropy(s / t)
