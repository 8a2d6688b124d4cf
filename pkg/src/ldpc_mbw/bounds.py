"""Closed-form bounds: the small-bisection counting bound, Thompson-model
area bounds and the energy scaling envelopes.

Every asymptotic statement is evaluated as an explicit formula whose constants
(``b``, ``c_s``, ``beta``, ``xi_tech``, ``lambda_w``) are supplied by the caller
and default to 1.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

from .degree_model import EnsembleStats
from .errors import BadRange, ConditionViolated, EtaOutOfRange, ValidationError

SQRT2_MINUS_1_SQ = (math.sqrt(2.0) - 1.0) ** 2


@dataclass(frozen=True)
class CircuitParams:
    wire_width: float = 1.0
    xi_tech: float = 1.0
    clock_cycles: int = 1
    circuit_mbw: int = 0

    def __post_init__(self) -> None:
        if self.wire_width <= 0 or self.xi_tech <= 0 or self.clock_cycles < 1:
            raise ValidationError("wire_width, xi_tech and clock_cycles must be positive")
        if self.circuit_mbw < 0:
            raise ValidationError("circuit_mbw must be >= 0")


@dataclass(frozen=True)
class CapacityParams:
    eta: float
    rate: float = 0.5
    block_b: float = 1.0
    sason_c: float = 1.0
    iterations: int = 1

    def __post_init__(self) -> None:
        if not 0.0 < self.eta < 1.0:
            raise EtaOutOfRange(f"eta={self.eta} outside (0, 1)")
        if not 0.0 < self.rate < 1.0:
            raise ValidationError(f"rate={self.rate} outside (0, 1)")
        if self.block_b <= 0 or self.sason_c <= 0 or self.iterations < 1:
            raise ValidationError("block_b, sason_c and iterations must be positive")


@dataclass
class BoundReport:
    lemma7_log_prob: float | None
    condition: float | None
    beta: float | None
    thompson_area: float
    nested_area: float
    energy_direct: float
    energy_ccn: float
    energy_per_bit: float | None
    inputs: dict[str, Any] = field(default_factory=dict)
    extra: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return asdict(self)


# -- factorial product helper -------------------------------------------------


def factorial_product_max(Y: int, Z: int) -> tuple[int, int]:
    """Pair ``(m, n)`` maximising ``m! n!`` over nonnegative integers with
    ``m + n <= Y`` and ``m, n <= Z``.

    The extreme split wins: fill one factor up to ``min(Y, Z)`` and give the
    rest to the other. For ``Z <= Y <= 2Z`` this is ``(Z, Y - Z)``.
    """
    if Y <= 0 or Z <= 0:
        raise BadRange("Y and Z must be positive")
    first = min(Y, Z)
    return first, min(Y - first, Z)


def factorial_product_bound(Y: int, Z: int) -> int:
    """``Z! (Y - Z)!``; valid as an upper bound on ``m! n!`` when ``Z <= Y <= 2Z``."""
    if Y <= 0 or Z <= 0 or not Z <= Y <= 2 * Z:
        raise BadRange(f"need 0 < Z <= Y <= 2Z, got Y={Y}, Z={Z}")
    return math.factorial(Z) * math.factorial(Y - Z)


def socket_split(edges: int, delta_n: int, a: int) -> tuple[int, int]:
    """Largest-product split of the ``|E| - a`` non-crossing sockets with each side capped at ``delta n``."""
    return factorial_product_max(edges - a, delta_n)


# -- small-bisection counting bound ----------------------------------------------


def _log_binom(n: float, k: float) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def _check_a(stats: EnsembleStats, n: int, a: int) -> tuple[Fraction, Fraction]:
    delta_n = stats.delta * n
    sigma_n = stats.sigma * n
    if isinstance(a, bool) or not isinstance(a, int) or a < 0 or a >= sigma_n:
        raise ConditionViolated(f"need 0 <= a < sigma*n = {sigma_n}, got a={a}")
    return delta_n, sigma_n


def lemma7_log_bound(stats: EnsembleStats, n: int | None = None, a: int = 0) -> float:
    """Natural log of the upper bound on P(configuration has a bisection of size <= a).

    ln[(a+1) n^2 C(n, n/2)^2 C(|E|, a)^4 a! (dn)! (sn - a)! / (dn + sn)!]

    ``dn`` and ``sn`` are ``delta*n`` and ``sigma*n``; non-integer values go
    through the gamma function. Values above 0 mean the bound is vacuous.
    """
    n = stats.n if n is None else n
    delta_n, sigma_n = _check_a(stats, n, a)
    dn, sn = float(delta_n), float(sigma_n)
    edges = dn + sn
    return (
        math.log(a + 1)
        + 2.0 * math.log(n)
        + 2.0 * _log_binom(n, n // 2)
        + 4.0 * _log_binom(edges, a)
        + math.lgamma(a + 1)
        + math.lgamma(dn + 1)
        + math.lgamma(sn - a + 1)
        - math.lgamma(edges + 1)
    )


def lemma7_exact_bound(stats: EnsembleStats, n: int | None = None, a: int = 0) -> Fraction:
    """The same bound as an exact rational; requires integral ``delta*n`` and ``sigma*n``."""
    n = stats.n if n is None else n
    delta_n, sigma_n = _check_a(stats, n, a)
    if delta_n.denominator != 1 or sigma_n.denominator != 1:
        raise ValidationError("exact mode needs integral delta*n and sigma*n")
    dn, sn = int(delta_n), int(sigma_n)
    edges = dn + sn
    num = (
        (a + 1)
        * n**2
        * math.comb(n, n // 2) ** 2
        * math.comb(edges, a) ** 4
        * math.factorial(a)
        * math.factorial(dn)
        * math.factorial(sn - a)
    )
    return Fraction(num, math.factorial(edges))


def log_of_fraction(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


def lemma7_ratio(edges: int, sigma_n: Fraction | int, a: int) -> Fraction:
    """Exact ``d_{a+1} / d_a = (|E| - a)^4 / ((a + 1)^3 (sigma n - a))`` of the per-``a`` prefactor."""
    denom = (a + 1) ** 3 * (Fraction(sigma_n) - a)
    if denom == 0:
        raise ConditionViolated("sigma*n - a must be nonzero")
    return Fraction((edges - a) ** 4) / denom


def clamped_probability(log_bound: float) -> float:
    return 1.0 if log_bound >= 0.0 else math.exp(log_bound)


# -- area and energy -------------------------------------------------------------


def thompson_area(lambda_w: float, omega: float) -> float:
    """Lower bound ``lambda_w^2 omega^2 / 4`` on the area of a layout with bisection width omega."""
    if lambda_w <= 0 or omega < 0:
        raise ValidationError("need lambda_w > 0 and omega >= 0")
    return lambda_w**2 * omega**2 / 4.0


def nested_bisection_area(lambda_w: float, edges: int, vertices: int) -> float:
    """Area lower bound ``lambda_w^2 (sqrt2 - 1)^2 / 4 * |E|^2 / |V|`` for a loop-free graph."""
    if lambda_w <= 0 or vertices < 1 or edges < 0:
        raise ValidationError("need lambda_w > 0, vertices >= 1, edges >= 0")
    return lambda_w**2 * SQRT2_MINUS_1_SQ / 4.0 * edges**2 / vertices


def min_clock_cycles(omega: int, circuit_mbw: int) -> int:
    """Cycles needed to move ``omega`` bits across a cut of ``circuit_mbw`` wires in one iteration."""
    if circuit_mbw <= 0:
        raise ValidationError("circuit_mbw must be positive")
    return -(-omega // circuit_mbw)


def ccn_energy_bound(params: CircuitParams, omega: float, n: int) -> float:
    """Per-iteration energy floor ``xi_tech * omega * sqrt(n)`` of a complete-check-node decoder."""
    if n < 1 or omega < 0:
        raise ValidationError("need n >= 1 and omega >= 0")
    return params.xi_tech * omega * math.sqrt(n)


def direct_energy_bound(params: CircuitParams, omega: float) -> float:
    """``xi_tech * A * tau`` with A the Thompson area for bisection width omega."""
    return params.xi_tech * thompson_area(params.wire_width, omega) * params.clock_cycles


def gap_scaling_report(cap: CapacityParams, lambda_w: float = 1.0, beta: float = 1.0,
                       xi_tech: float = 1.0) -> dict[str, float]:
    """Gap-to-capacity envelopes with explicit constants.

    n_min = b / (1-eta)^2 is the block length; k = R n the information bits.
    """
    if lambda_w <= 0 or beta <= 0 or xi_tech <= 0:
        raise ValidationError("lambda_w, beta, xi_tech must be positive")
    gap = 1.0 - cap.eta
    log_term = math.log(1.0 / gap)
    n_min = cap.block_b / gap**2
    k = cap.rate * n_min
    area_direct = lambda_w**2 * beta**2 * cap.block_b**2 / (4.0 * gap**4)
    energy_all_direct = cap.iterations * n_min * cap.sason_c**2 * log_term**2
    energy_ccn = xi_tech * beta * n_min**1.5
    return {
        "n_min": n_min,
        "k": k,
        "area_direct": area_direct,
        "energy_all_direct": energy_all_direct,
        "energy_per_bit": energy_all_direct / k,
        "energy_ccn": energy_ccn,
        "energy_ccn_per_bit": energy_ccn / k,
    }
