import itertools
import math
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.stats import chisquare

from ldpc_mbw.bisection import exact_mbw
from ldpc_mbw.config_model import (
    Configuration,
    Multigraph,
    enumerate_configurations,
    mix,
    multigraph_from_json_obj,
    removed_edge_units,
    sample,
    simplify,
    to_multigraph,
)
from ldpc_mbw.degree_model import regular, validate
from ldpc_mbw.errors import TooLarge, ValidationError


def test_single_edge_sample_is_identity():
    ds = validate([1], [1])
    for seed in (0, 1, 2**63 + 5):
        assert sample(ds, seed).pairing == (0,)


def test_sample_deterministic():
    ds = regular(4, 6, 3)
    assert sample(ds, 99) == sample(ds, 99)
    assert sample(ds, 99) != sample(ds, 100)


def test_mix_distinct_and_stable():
    seeds = [mix(7, t) for t in range(1000)]
    assert len(set(seeds)) == 1000
    assert all(0 <= s < 2**64 for s in seeds)
    assert mix(7, 3) == seeds[3]


def test_bad_pairing():
    with pytest.raises(ValidationError):
        Configuration(validate([1, 1], [2]), (0, 0))


class TestEnumerate:
    def test_three(self):
        assert len(list(enumerate_configurations(validate([1, 2], [3])))) == 6

    def test_four_unique(self):
        confs = list(enumerate_configurations(validate([2, 2], [2, 2])))
        assert len(confs) == 24
        assert len({c.pairing for c in confs}) == 24

    def test_lexicographic(self):
        pairings = [c.pairing for c in enumerate_configurations(validate([1, 1, 1], [3]))]
        assert pairings == sorted(pairings)

    def test_too_large(self):
        with pytest.raises(TooLarge):
            next(enumerate_configurations(validate([5, 5], [5, 5])))

    def test_cap_override(self):
        ds = validate([5, 5], [5, 5])
        assert next(enumerate_configurations(ds, cap=10)).pairing == tuple(range(10))


class TestMultigraph:
    def test_identity_double_edge(self):
        g = to_multigraph(Configuration(validate([2], [2]), (0, 1)))
        assert g.edge_mult == {(0, 0): 2}

    def test_cross_pairing(self):
        g = to_multigraph(Configuration(validate([1, 1], [1, 1]), (1, 0)))
        assert g.edge_mult == {(0, 1): 1, (1, 0): 1}

    def test_degree_preservation_63(self):
        ds = regular(2, 6, 3)
        for seed in range(200):
            g = to_multigraph(sample(ds, seed))
            assert g.edge_units == 12
            assert g.left_degrees() == [6, 6]
            assert g.right_degrees() == [3, 3, 3, 3]

    def test_json_roundtrip(self):
        g = to_multigraph(sample(regular(4, 6, 3), 5))
        assert multigraph_from_json_obj(g.to_json()) == g

    @pytest.mark.parametrize("obj", [{"n": 1, "m": 1}, {"n": 1, "m": 1, "edges": [[0, 1, 1]]},
                                     {"n": 1, "m": 1, "edges": [[0, 0, -1]]}, {"n": 1, "m": 1, "edges": "x"}])
    def test_json_rejects(self, obj):
        with pytest.raises(ValidationError):
            multigraph_from_json_obj(obj)


class TestSimplify:
    def test_even_deleted(self):
        assert simplify(Multigraph(1, 1, {(0, 0): 2})).edge_mult == {}

    def test_odd_collapsed(self):
        assert simplify(Multigraph(1, 1, {(0, 0): 3})).edge_mult == {(0, 0): 1}

    def test_simple_fixed_point(self):
        g = Multigraph(2, 2, {(0, 0): 1, (1, 1): 1})
        assert simplify(g) == g

    def test_removed_units(self):
        g = Multigraph(2, 2, {(0, 0): 2, (0, 1): 3, (1, 1): 1})
        assert removed_edge_units(g) == 4
        assert simplify(g).edge_units == g.edge_units - 4

    @given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(1, 6)))
    def test_idempotent(self, mult):
        g = Multigraph(4, 4, mult)
        assert simplify(simplify(g)) == simplify(g)

    @pytest.mark.parametrize("lam,rho", [([2, 2], [2, 2]), ([2, 2, 2], [3, 3]), ([1, 2, 3], [3, 3]), ([3, 3], [2, 2, 2])])
    def test_mbw_shift_bounded_by_removed_units(self, lam, rho):
        ds = validate(lam, rho)
        for c in enumerate_configurations(ds):
            g = to_multigraph(c)
            removed = removed_edge_units(g)
            w, w_s = exact_mbw(g).width, exact_mbw(simplify(g)).width
            assert w - removed <= w_s <= w + removed


class TestUniformity:
    def test_v1_c1_edge_count_distribution(self):
        """(6,3)-regular n=2: law of the v1-c1 multiplicity against exact enumeration of c1's socket images."""
        ds = regular(2, 6, 3)
        # c1 owns right sockets 0..2; v1 owns left sockets 0..5
        exact = Counter(sum(s < 6 for s in images) for images in itertools.permutations(range(12), 3))
        total = sum(exact.values())
        draws = 100_000
        observed = Counter()
        for seed in range(draws):
            observed[to_multigraph(sample(ds, seed)).edge_mult.get((0, 0), 0)] += 1
        keys = sorted(exact)
        stat = chisquare([observed[k] for k in keys], [draws * exact[k] / total for k in keys])
        assert stat.pvalue > 0.01

    def test_pairings_uniform_small(self):
        ds = validate([1, 2, 2], [2, 3])
        cells = {c.pairing: i for i, c in enumerate(enumerate_configurations(ds))}
        assert len(cells) == math.factorial(5)
        draws = 200_000
        counts = [0] * len(cells)
        for seed in range(draws):
            counts[cells[sample(ds, mix(2024, seed)).pairing]] += 1
        assert chisquare(counts).pvalue > 0.01
