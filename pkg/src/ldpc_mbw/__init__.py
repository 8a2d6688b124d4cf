"""Minimum bisection width and energy lower bounds for configuration-model LDPC Tanner graphs."""

from .bisection import BisectionResult, exact_mbw, heuristic_mbw, width_of
from .config_model import Configuration, Multigraph, enumerate_configurations, sample, simplify, to_multigraph
from .degree_model import (
    DegreeSequence,
    EnsembleStats,
    beta_condition_value,
    condition_value,
    ensemble_stats,
    regular,
    solve_beta,
    validate,
)

__all__ = [
    "BisectionResult",
    "Configuration",
    "DegreeSequence",
    "EnsembleStats",
    "Multigraph",
    "beta_condition_value",
    "condition_value",
    "ensemble_stats",
    "enumerate_configurations",
    "exact_mbw",
    "heuristic_mbw",
    "regular",
    "sample",
    "simplify",
    "solve_beta",
    "to_multigraph",
    "validate",
    "width_of",
]

__version__ = "0.1.0"
