"""Bandit threshold model: reduction, sign rules, determinism, sweeps."""

import math

import numpy as np
import pytest

from antlion import (
    Ar1Signal,
    BanditConfig,
    NormalSignal,
    UniformSignal,
    nearest_integer,
    run_bandit,
    sweep_alpha,
)


class TestNearestInteger:
    @pytest.mark.parametrize(
        "x, expected",
        [(0.4, 0), (-1.7, -2), (0.5, 1), (-0.5, -1), (2.5, 3), (-2.5, -3), (0.0, 0)],
    )
    def test_ties_away_from_zero(self, x, expected):
        assert nearest_integer(x) == expected


def config(**kwargs) -> BanditConfig:
    base = dict(p_a=0.8, p_b=0.3, horizon=10_000, signal=NormalSignal())
    base.update(kwargs)
    return BanditConfig(**base)


class TestRunBandit:
    def test_simple_rw_reduction(self):
        # k = delta = omega = 1, alpha = 1: integer adjuster, +-1 increments,
        # threshold equal to the adjuster.
        trace = run_bandit(config(alpha=1.0), seed=3)
        assert np.all(trace.x == np.rint(trace.x))
        increments = np.diff(np.concatenate([[0.0], trace.x]))
        assert set(np.unique(increments)) == {-1.0, 1.0}
        assert np.array_equal(trace.theta, trace.x)

    def test_four_case_sign_rule(self):
        trace = run_bandit(config(delta=2.0, omega=3.0, alpha=0.9), seed=5)
        a, won, xi = trace.arm_a, trace.reward, trace.xi
        assert np.all(xi[a & won] == -2.0)
        assert np.all(xi[a & ~won] == 3.0)
        assert np.all(xi[~a & won] == 2.0)
        assert np.all(xi[~a & ~won] == -3.0)

    def test_trace_self_consistency(self):
        trace = run_bandit(config(alpha=0.7, k=2.0), seed=11)
        x = 0.0
        for i in range(trace.config.horizon):
            x = 0.7 * x + trace.xi[i]
            assert x == trace.x[i]
            assert trace.theta[i] == 2.0 * nearest_integer(x)

    def test_deterministic(self):
        a = run_bandit(config(alpha=0.9), seed=42)
        b = run_bandit(config(alpha=0.9), seed=42)
        assert np.array_equal(a.x, b.x)
        assert np.array_equal(a.arm_a, b.arm_a)
        assert np.array_equal(a.signal, b.signal)

    def test_symmetric_arms_balance(self):
        # Mean-reverting adjuster with a continuous signal: selections are an
        # unbiased coin, so the frequency sits in the 3-sigma binomial band.
        horizon = 100_000
        trace = run_bandit(
            config(p_a=0.5, p_b=0.5, alpha=0.1, horizon=horizon), seed=7
        )
        assert abs(trace.selection_rate_a - 0.5) < 3 * math.sqrt(0.25 / horizon)
        assert trace.correct_rate() == 1.0  # equal arms: every choice correct

    def test_learns_better_arm(self):
        trace = run_bandit(
            config(p_a=0.8, p_b=0.2, alpha=0.99, signal=UniformSignal(-5, 5)), seed=13
        )
        assert trace.correct_rate(last=1000) > 0.9

    def test_swap_changes_correct_arm(self):
        cfg = config(p_a=0.9, p_b=0.1, horizon=2_000, swap_at=1_000, alpha=0.8)
        trace = run_bandit(cfg, seed=17)
        # Before the swap arm A is correct, after it arm B is.
        assert np.all(trace.correct[:1000] == trace.arm_a[:1000])
        assert np.all(trace.correct[1000:] == ~trace.arm_a[1000:])

    def test_recrossing_after_swap_not_later_than_full_memory(self):
        horizon, swap = 10_000, 5_000
        crossings = {}
        for alpha in (0.9, 1.0):
            cfg = config(
                p_a=0.9, p_b=0.1, horizon=horizon, swap_at=swap, alpha=alpha
            )
            trace = run_bandit(cfg, seed=23)
            after = trace.x[swap:]
            hits = np.nonzero(after >= 0.0)[0]
            crossings[alpha] = hits[0] if hits.size else math.inf
        assert crossings[0.9] <= crossings[1.0]

    def test_signal_sources(self):
        for signal in (UniformSignal(-5, 5), NormalSignal(), Ar1Signal(-0.5)):
            trace = run_bandit(config(signal=signal, horizon=500), seed=1)
            assert trace.signal.shape == (500,)
        uniform = run_bandit(config(signal=UniformSignal(-3, 3), horizon=500), seed=1)
        assert np.all(uniform.signal == np.rint(uniform.signal))
        assert uniform.signal.min() >= -3 and uniform.signal.max() <= 3

    def test_ar1_autocorrelation_sign(self):
        trace = run_bandit(
            config(signal=Ar1Signal(-0.7), horizon=20_000), seed=29
        )
        s = trace.signal
        lag1 = np.corrcoef(s[:-1], s[1:])[0, 1]
        assert lag1 < -0.5

    def test_config_validation(self):
        with pytest.raises(ValueError):
            config(k=0.0)
        with pytest.raises(ValueError):
            config(p_a=1.5)
        with pytest.raises(ValueError):
            config(horizon=0)
        with pytest.raises(ValueError):
            Ar1Signal(1.0)
        with pytest.raises(ValueError):
            UniformSignal(2, 2)


class TestSweep:
    def test_single_alpha_single_seed_matches_run(self):
        cfg = config(horizon=2_000)
        rows = sweep_alpha(cfg, [0.9], n_seeds=1, seed_base=5)
        ss = np.random.SeedSequence(entropy=5, spawn_key=(0,))
        direct = run_bandit(
            BanditConfig(
                p_a=cfg.p_a,
                p_b=cfg.p_b,
                horizon=cfg.horizon,
                k=cfg.k,
                alpha=0.9,
                delta=cfg.delta,
                omega=cfg.omega,
                signal=cfg.signal,
            ),
            ss,
        )
        assert np.array_equal(
            rows[0].mean_correct_trajectory, direct.correct_rate_over_time()
        )

    def test_stationary_arms_converge(self):
        cfg = config(p_a=0.8, p_b=0.2, horizon=5_000, signal=UniformSignal(-5, 5))
        rows = sweep_alpha(cfg, [0.9, 1.0], n_seeds=3, seed_base=0)
        assert all(row.last_window_rate > 0.6 for row in rows)

    def test_high_memory_seed_average_learns(self):
        # Seed-averaged rate over the trailing window clears 0.9 with strong
        # memory and well-separated arms.
        cfg = config(
            p_a=0.8, p_b=0.2, horizon=10_000, alpha=0.99,
            signal=UniformSignal(-5, 5),
        )
        rows = sweep_alpha(cfg, [0.99], n_seeds=20, seed_base=11)
        assert rows[0].last_window_rate > 0.9

    def test_requires_alphas(self):
        with pytest.raises(ValueError):
            sweep_alpha(config(), [], n_seeds=1)
