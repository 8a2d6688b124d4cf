"""Shared brute-force oracles and the acceptance summary hook."""

from __future__ import annotations

import itertools

import pytest

from ldpc_mbw.config_model import Multigraph

ACCEPTANCE_LINES: list[str] = []


def brute_mbw(g: Multigraph) -> int:
    """Minimum over every balanced split, straight from the definition."""
    vertices = g.vertices
    if vertices == 0:
        return 0
    n = g.n_left
    best = None
    for side in itertools.combinations(range(vertices), (vertices + 1) // 2):
        s = set(side)
        width = sum(k for (i, j), k in g.edge_mult.items() if (i in s) != (n + j in s))
        best = width if best is None else min(best, width)
    return best


def brute_top_half(degrees: tuple[int, ...]) -> int:
    k = len(degrees)
    return max(sum(c) for c in itertools.combinations(degrees, (k + 1) // 2))


def four_cycle() -> Multigraph:
    return Multigraph(2, 2, {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1})


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
