import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ldpc_mbw.degree_model import (
    beta_condition_value,
    beta_limit_at_sigma,
    condition_value,
    ensemble_stats,
    family_from_json_obj,
    from_json_obj,
    regular,
    solve_beta,
    validate,
)
from ldpc_mbw.errors import BetaOutOfRange, DegenerateSigma, SocketMismatch, ValidationError, ZeroDegree

from conftest import brute_top_half

mpmath.mp.dps = 40


def mp_beta_condition(d, s, b):
    d, s, b = mpmath.mpf(d), mpmath.mpf(s), mpmath.mpf(b)
    t = d + s
    H = lambda x: -x * mpmath.log(x) - (1 - x) * mpmath.log(1 - x)  # noqa: E731
    return 2 * H(mpmath.mpf(1) / 2) + 4 * H(b / t) + b * mpmath.log(b / (s - b)) + d * mpmath.log(d / t) + s * mpmath.log((s - b) / t)


@st.composite
def degree_sequences(draw, max_nodes=6, max_deg=5):
    lam = draw(st.lists(st.integers(1, max_deg), min_size=1, max_size=max_nodes))
    total = sum(lam)
    m = draw(st.integers(1, min(max_nodes, total)))
    cuts = sorted(draw(st.sets(st.integers(1, total - 1), min_size=m - 1, max_size=m - 1))) if m > 1 else []
    rho = [b - a for a, b in zip([0] + cuts, cuts + [total])]
    return validate(lam, rho)


class TestValidate:
    def test_regular_62(self):
        ds = validate([6, 6], [3, 3, 3, 3])
        assert ds.edges == 12

    def test_socket_mismatch(self):
        with pytest.raises(SocketMismatch):
            validate([2], [1])

    def test_irregular(self):
        ds = validate([3, 1, 2], [3, 3])
        assert ds.edges == 6
        assert ds.lam == (1, 2, 3)

    def test_zero_degree(self):
        with pytest.raises(ZeroDegree):
            validate([0, 2], [2])

    def test_empty(self):
        with pytest.raises(ValidationError):
            validate([], [1])


class TestJson:
    def test_explicit(self):
        assert from_json_obj({"lambda": [1, 1], "rho": [2]}).rho == (2,)

    def test_regular_shorthand(self):
        ds = from_json_obj({"n": 8, "dv": 6, "dc": 3})
        assert (ds.n, ds.m, ds.edges) == (8, 16, 48)

    def test_regular_non_integer_m(self):
        with pytest.raises(ValidationError):
            from_json_obj({"n": 3, "dv": 3, "dc": 6})

    @pytest.mark.parametrize("obj", [[1, 2], {"lambda": [1]}, {"n": 2}, {"n": "2", "dv": 1, "dc": 1}, "x"])
    def test_rejects(self, obj):
        with pytest.raises(ValidationError):
            from_json_obj(obj)

    def test_family_shorthand(self):
        fam = family_from_json_obj({"n": [2, 4], "dv": 6, "dc": 3})
        assert [ds.n for ds in fam] == [2, 4]


class TestEnsembleStats:
    def test_63_regular(self):
        s = ensemble_stats(regular(8, 6, 3))
        assert (s.delta, s.sigma) == (3, 3)
        assert s.n_less_than_m

    def test_36_regular(self):
        s = ensemble_stats(regular(4, 3, 6))
        assert (s.delta, s.sigma) == (Fraction(3, 2), Fraction(3, 2))
        assert s.n * s.delta == max(brute_top_half((3,) * 4), brute_top_half((6, 6)))

    def test_path(self):
        s = ensemble_stats(validate([1, 1], [2]))
        assert s.delta_l == Fraction(1, 2)
        assert s.delta_r == 2
        assert s.delta == 1
        assert s.sigma == 0

    @given(degree_sequences())
    def test_invariants(self, ds):
        s = ensemble_stats(ds)
        assert s.delta + s.sigma == Fraction(ds.edges, ds.n)
        assert s.delta >= Fraction(ds.edges, 2 * ds.n) >= s.sigma >= 0
        assert s.n * s.delta == max(s.n * s.delta_l, s.m * s.delta_r)
        assert s.n * s.delta == max(brute_top_half(ds.lam), brute_top_half(ds.rho))


class TestCondition:
    def test_golden(self):
        assert condition_value((3, 3)) == pytest.approx(-2.77, abs=0.005)
        assert condition_value((3, 3)) == pytest.approx(-4 * math.log(2), rel=1e-12)

    def test_36(self):
        expected = float(2 * mpmath.log(2) + 3 * mpmath.log(mpmath.mpf(1) / 2))
        assert condition_value((Fraction(3, 2), Fraction(3, 2))) == pytest.approx(expected, rel=1e-12)
        assert expected == pytest.approx(-0.6931, abs=1e-4)

    @given(st.floats(0.01, 20))
    def test_symmetric_identity(self, s):
        assert condition_value((s, s)) == pytest.approx((2 - 2 * s) * math.log(2), rel=1e-9, abs=1e-12)
        assert (condition_value((s, s)) < 0) == (s > 1)

    def test_degenerate(self):
        with pytest.raises(DegenerateSigma):
            condition_value(ensemble_stats(validate([1, 1], [2])))

    @settings(max_examples=50)
    @given(st.floats(0.1, 5), st.floats(0.0, 5), st.floats(0.01, 5))
    def test_decreasing_in_delta(self, sigma, extra, step):
        d1 = sigma + extra
        assert condition_value((d1 + step, sigma)) < condition_value((d1, sigma))


class TestBetaCondition:
    def test_small_beta_limit(self):
        b = 1e-8 * 3
        assert abs(beta_condition_value((3, 3), b) - condition_value((3, 3))) < 1e-6

    def test_value_at_01(self):
        v = beta_condition_value((3, 3), 0.1)
        assert v == pytest.approx(float(mp_beta_condition(3, 3, 0.1)), rel=1e-12)
        assert v < 0

    @pytest.mark.parametrize("d,s", [(3, 3), (1.5, 1.5), (4, 2), (10, 1)])
    def test_limit_at_sigma_is_finite(self, d, s):
        near = beta_condition_value((d, s), s * (1 - 1e-10))
        assert near == pytest.approx(beta_limit_at_sigma((d, s)), abs=1e-6)
        assert near == pytest.approx(float(mp_beta_condition(d, s, mpmath.mpf(s) * (1 - mpmath.mpf("1e-10")))), abs=1e-9)

    def test_63_limit_is_zero(self):
        assert beta_limit_at_sigma((3, 3)) == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("b", [0.0, -1.0, 3.0, 3.5])
    def test_out_of_range(self, b):
        with pytest.raises(BetaOutOfRange):
            beta_condition_value((3, 3), b)


class TestSolveBeta:
    def test_63_supremum(self):
        b = solve_beta(ensemble_stats(regular(4, 6, 3)), 1e-9)
        assert 0 < b < 3
        assert beta_condition_value((3, 3), b) <= 0
        assert 3 - b <= 1e-9

    @pytest.mark.parametrize("d,s", [(1.5, 1.5), (4, 2)])
    def test_interior_root(self, d, s):
        b = solve_beta((d, s), 1e-9)
        assert beta_condition_value((d, s), b) <= 0
        assert beta_condition_value((d, s), b + 1e-6) > 0
        assert float(mp_beta_condition(d, s, b)) <= 1e-12

    def test_none_when_condition_fails(self):
        assert solve_beta((0.5, 0.5), 1e-9) is None

    def test_bad_tolerance(self):
        with pytest.raises(ValidationError):
            solve_beta((3, 3), 0)

    @settings(max_examples=40, deadline=None)
    @given(st.floats(0.2, 8), st.floats(0.1, 1.0))
    def test_contract(self, sigma, ratio):
        d = sigma / ratio
        b = solve_beta((d, sigma), 1e-8)
        if condition_value((d, sigma)) >= 0:
            assert b is None
        else:
            assert 0 < b < sigma
            assert beta_condition_value((d, sigma), b) <= 0
