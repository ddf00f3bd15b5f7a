"""Exact enumeration engine: support, probabilities, uniqueness, residence."""

import itertools
import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from antlion import (
    Alpha,
    HorizonTooLargeError,
    WalkParams,
    check_path_uniqueness_exact,
    check_path_uniqueness_real,
    closed_form_mean,
    closed_form_variance,
    enumerate_distribution,
    exact_cdf,
    exact_moments,
    exact_residence_distribution,
    position_bounds,
    support_size,
)

GOLDEN = (-1 + math.sqrt(5)) / 2

ALPHAS = [Fraction(1, 10), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(9, 10)]


def params(alpha, p=Fraction(1, 2), t=0):
    if isinstance(alpha, Fraction):
        alpha = Alpha.from_fraction(alpha)
    return WalkParams(alpha=alpha, p=p, t=t)


def brute_residence_pmf(alpha: Fraction, p: Fraction, t: int) -> dict:
    """Oracle: walk every path in exact arithmetic, counting X_s >= 0."""
    pmf = {j: Fraction(0) for j in range(t + 1)}
    for signs in itertools.product((-1, 1), repeat=t):
        x = Fraction(0)
        cnt = 0
        prob = Fraction(1)
        for s in signs:
            x = alpha * x + s
            cnt += x >= 0
            prob *= p if s == -1 else 1 - p
        pmf[cnt] += prob
    return pmf


class TestEnumerate:
    def test_two_steps_table(self):
        dist = enumerate_distribution(params(Fraction(1, 2), t=2))
        assert dist.support_fractions() == [
            Fraction(-3, 2),
            Fraction(-1, 2),
            Fraction(1, 2),
            Fraction(3, 2),
        ]
        for scaled in dist.entries:
            assert dist.point_probability(scaled) == Fraction(1, 4)

    def test_two_steps_general_p(self):
        p = Fraction(3, 10)
        dist = enumerate_distribution(params(Fraction(1, 3), p=p, t=2))
        by_pos = {
            Fraction(s, dist.scale_denominator): dist.point_probability(s)
            for s in dist.entries
        }
        a = Fraction(1, 3)
        assert by_pos == {
            -a - 1: p * p,
            -a + 1: p * (1 - p),
            a - 1: p * (1 - p),
            a + 1: (1 - p) * (1 - p),
        }

    def test_uniform_32_points(self):
        dist = enumerate_distribution(params(Fraction(9, 10), t=5))
        assert support_size(dist) == 32
        assert all(dist.point_probability(s) == Fraction(1, 32) for s in dist.entries)
        assert float(Fraction(1, 32)) == 0.03125

    def test_horizon_zero(self):
        dist = enumerate_distribution(params(Fraction(1, 3), t=0))
        assert support_size(dist) == 1
        assert dist.point_probability(0) == 1

    def test_one_step_asymmetric(self):
        dist = enumerate_distribution(params(Fraction(1, 3), p=0.3, t=1))
        by_pos = {s: dist.point_probability(s) for s in sorted(dist.entries)}
        assert by_pos == {-1: 0.3, 1: 0.7}

    def test_rejects_real_alpha(self):
        with pytest.raises(ValueError):
            enumerate_distribution(WalkParams(alpha=Alpha.from_real(0.5), t=3))

    def test_horizon_cap(self):
        with pytest.raises(HorizonTooLargeError):
            enumerate_distribution(params(Fraction(1, 2), t=6), cap=5)
        enumerate_distribution(params(Fraction(1, 2), t=6), cap=6)

    def test_probabilities_sum_to_one(self):
        dist = enumerate_distribution(params(Fraction(2, 3), p=Fraction(7, 10), t=9))
        assert dist.total_probability() == 1
        dist_f = enumerate_distribution(params(Fraction(2, 3), p=0.7, t=9))
        assert dist_f.total_probability() == pytest.approx(1.0, abs=1e-12)

    def test_scaled_bound(self):
        dist = enumerate_distribution(params(Fraction(2, 3), t=8))
        m, n = 2, 3
        cap = sum(m ** (8 - s) * n ** (s - 1) for s in range(1, 9))
        assert max(abs(s) for s in dist.entries) <= cap

    @given(
        alpha=st.sampled_from(ALPHAS),
        t=st.integers(0, 10),
    )
    @settings(max_examples=25, deadline=None)
    def test_symmetric_support_and_probabilities(self, alpha, t):
        dist = enumerate_distribution(params(alpha, t=t))
        probs = {
            pos: dist.point_probability(s)
            for s, pos in zip(sorted(dist.entries), dist.support_fractions())
        }
        for pos, prob in probs.items():
            assert probs[-pos] == prob

    def test_support_inside_bounds(self):
        for alpha in ALPHAS:
            dist = enumerate_distribution(params(alpha, t=10))
            lo, hi = position_bounds(Alpha.from_fraction(alpha))
            fracs = dist.support_fractions()
            assert lo < fracs[0] and fracs[-1] < hi


class TestSupportSize:
    @pytest.mark.parametrize("alpha, t, expected", [
        (Fraction(1, 2), 5, 32),
        (Fraction(1, 2), 0, 1),
        (Fraction(2, 3), 12, 4096),
    ])
    def test_powers_of_two(self, alpha, t, expected):
        assert support_size(enumerate_distribution(params(alpha, t=t))) == expected


class TestPathUniqueness:
    def test_exact_half(self):
        assert check_path_uniqueness_exact(Fraction(1, 2), 12).empty

    def test_exact_two_thirds(self):
        assert check_path_uniqueness_exact(Fraction(2, 3), 10).empty

    def test_exact_trivial(self):
        assert check_path_uniqueness_exact(Fraction(1, 3), 0).empty

    def test_real_golden_ratio_collision(self):
        report = check_path_uniqueness_real(GOLDEN, 3, tolerance=1e-9)
        assert len(report) == 1
        col = report.collisions[0]
        assert {col.path_a, col.path_b} == {(1, 1, -1), (-1, -1, 1)}
        assert abs(col.shared_position) < 1e-9
        assert col.time == 3

    def test_real_rational_clean(self):
        assert check_path_uniqueness_real(0.5, 10, tolerance=1e-12).empty

    def test_real_single_step(self):
        assert check_path_uniqueness_real(0.37, 1).empty


class TestCdf:
    def test_tails(self):
        dist = enumerate_distribution(params(Fraction(1, 2), t=6))
        assert exact_cdf(dist, 2.0) == 1.0
        assert exact_cdf(dist, 5.0) == 1.0
        assert exact_cdf(dist, -2.0) == 0.0

    def test_median_two_steps(self):
        dist = enumerate_distribution(params(Fraction(1, 2), t=2))
        assert exact_cdf(dist, 0.0) == 0.5

    def test_monotone(self):
        dist = enumerate_distribution(params(Fraction(9, 10), p=0.3, t=7))
        xs = [-12, -3, -1, -0.2, 0, 0.4, 1, 3, 12]
        vals = [exact_cdf(dist, x) for x in xs]
        assert all(a <= b for a, b in zip(vals, vals[1:]))


class TestMoments:
    @pytest.mark.parametrize("alpha", ALPHAS)
    @pytest.mark.parametrize(
        "p", [Fraction(0), Fraction(3, 10), Fraction(1, 2), Fraction(7, 10), Fraction(1)]
    )
    def test_exact_equality_small_grid(self, alpha, p):
        for t in (1, 3, 6, 9):
            prm = params(alpha, p=p, t=t)
            mean, var = exact_moments(enumerate_distribution(prm))
            assert mean == closed_form_mean(prm)
            assert var == closed_form_variance(prm)

    def test_float_p_close(self):
        prm = params(Fraction(9, 10), p=0.3, t=12)
        mean, var = exact_moments(enumerate_distribution(prm))
        assert mean == pytest.approx(closed_form_mean(prm), abs=1e-12)
        assert var == pytest.approx(closed_form_variance(prm), abs=1e-12)

    def test_all_minus(self):
        alpha = Fraction(2, 3)
        prm = params(alpha, p=Fraction(1), t=5)
        mean, var = exact_moments(enumerate_distribution(prm))
        assert mean == -(1 - alpha**5) / (1 - alpha)
        assert var == 0


class TestResidence:
    def test_binomial_at_half(self):
        pmf = exact_residence_distribution(params(Fraction(1, 2), t=10))
        assert pmf[5] == Fraction(63, 256)
        oracle = brute_residence_pmf(Fraction(1, 2), Fraction(1, 2), 10)
        assert pmf == oracle
        for j in range(11):
            assert pmf[j] == Fraction(math.comb(10, j), 2**10)

    def test_binomial_nine_tenths_t2(self):
        # alpha^t - 2 alpha + 1 = 0.81 - 0.8 > 0, so the binomial law holds.
        pmf = exact_residence_distribution(params(Fraction(9, 10), t=2))
        oracle = brute_residence_pmf(Fraction(9, 10), Fraction(1, 2), 2)
        assert pmf == oracle
        assert pmf == {0: Fraction(1, 4), 1: Fraction(1, 2), 2: Fraction(1, 4)}

    def test_all_minus_never_positive(self):
        pmf = exact_residence_distribution(params(Fraction(1, 3), p=Fraction(1), t=3))
        assert pmf[0] == 1
        assert sum(pmf.values()) == 1

    def test_pmf_sums_to_one(self):
        pmf = exact_residence_distribution(params(Fraction(2, 3), p=0.3, t=8))
        assert sum(pmf.values()) == 1  # Fractions, exact even for float p

    def test_matches_brute_force_beyond_condition(self):
        # alpha=0.9, t=5 fails the sufficient condition; the engine still
        # reports the true law, whatever it is.
        alpha, t = Fraction(9, 10), 5
        pmf = exact_residence_distribution(params(alpha, t=t))
        assert pmf == brute_residence_pmf(alpha, Fraction(1, 2), t)


class TestSerialization:
    def test_csv(self, tmp_path):
        dist = enumerate_distribution(params(Fraction(1, 2), t=3))
        target = tmp_path / "dist.csv"
        dist.to_csv(target)
        lines = target.read_text().strip().splitlines()
        assert lines[0] == "position_real,scaled_value,k_minus_steps,probability"
        assert len(lines) == 1 + 8

    def test_json(self, tmp_path):
        dist = enumerate_distribution(params(Fraction(1, 2), t=2))
        target = tmp_path / "dist.json"
        dist.to_json(target)
        doc = json.loads(target.read_text())
        assert doc["t"] == 2
        assert doc["alpha"] == "1/2"
        assert len(doc["points"]) == 4
        assert doc["points"][0]["position"] == -1.5
