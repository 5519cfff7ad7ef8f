import numpy as np
import pytest

from cointlab import adf_test, classify_integration, pp_test
from cointlab.cv_tables import replication_rng
from cointlab.errors import SeriesTooShort
from conftest import ar1, series


def walk(seed, T, drift=0.0):
    rng = replication_rng(seed, 0)
    return np.cumsum(rng.standard_normal(T) + drift)


class TestAdf:
    def test_matches_manual_dickey_fuller_regression(self):
        # lags=0, constant-only: the plain first-order regression
        y = walk(21, 80)
        res = adf_test(series(y), "constant", lags=0)
        dy = np.diff(y)
        X = np.column_stack([np.ones(79), y[:-1]])
        coef, *_ = np.linalg.lstsq(X, dy, rcond=None)
        resid = dy - X @ coef
        s2 = resid @ resid / (79 - 2)
        se = np.sqrt(s2 * np.linalg.inv(X.T @ X)[1, 1])
        assert res.statistic == pytest.approx(coef[1] / se, abs=1e-10)
        assert res.n_effective == 79

    def test_n_effective_with_lags(self):
        y = walk(22, 60)
        res = adf_test(series(y), "constant", lags=3)
        assert res.n_effective == 60 - 1 - 3

    def test_affine_invariance(self):
        y = walk(23, 100)
        base = adf_test(series(y), "constant", lags=2).statistic
        scaled = adf_test(series(7.3 * y + 11.0), "constant", lags=2).statistic
        assert scaled == pytest.approx(base, abs=1e-8)
        base_t = adf_test(series(y), "constant_trend", lags=2).statistic
        scaled_t = adf_test(series(7.3 * y + 11.0), "constant_trend", lags=2).statistic
        assert scaled_t == pytest.approx(base_t, abs=1e-8)

    def test_decision_consistent_with_critical_values(self):
        for seed in range(12):
            y = walk(30 + seed, 90)
            res = adf_test(series(y), "constant", lags=1)
            for level, cv in res.critical_values.items():
                assert res.rejects_at(level) == (res.statistic < cv)
            if res.rejected_at is not None:
                assert res.rejects_at(res.rejected_at)

    def test_auto_lag_selection_is_deterministic(self):
        y = walk(24, 70)
        a = adf_test(series(y), "constant")
        b = adf_test(series(y), "constant")
        assert a.statistic == b.statistic
        assert a.lags_or_bandwidth == b.lags_or_bandwidth

    def test_too_short(self):
        with pytest.raises(SeriesTooShort):
            adf_test(series([1.0, 2.0, 1.5, 2.5, 2.0]), "constant", lags=0)

    def test_size_and_power_quick(self):
        # null: pure random walk; alternative: stationary AR(0.5); T = 200
        reject_null = 0
        reject_alt = 0
        reps = 200
        for rep in range(reps):
            rng = replication_rng(900, rep)
            rw = np.cumsum(rng.standard_normal(200))
            reject_null += adf_test(series(rw), "constant", lags=0).rejects_at(0.05)
            a = ar1(rng, 200, 0.5)
            reject_alt += adf_test(series(a), "constant", lags=0).rejects_at(0.05)
        assert 0.02 <= reject_null / reps <= 0.09
        assert reject_alt / reps >= 0.95

    def test_trend_spec_helps_on_trend_stationary_series(self):
        # around a linear trend, the constant-only test has no power; the
        # constant+trend test rejects on average
        diffs = []
        for rep in range(30):
            rng = replication_rng(901, rep)
            y = 0.3 * np.arange(150) + ar1(rng, 150, 0.5)
            c = adf_test(series(y), "constant", lags=1).statistic
            ct = adf_test(series(y), "constant_trend", lags=1).statistic
            diffs.append(ct - c)
        assert np.mean(diffs) < -1.0


class TestPhillipsPerron:
    def test_zero_bandwidth_equals_lag0_adf(self):
        y = walk(40, 90)
        pp = pp_test(series(y), "constant", bandwidth=0)
        adf = adf_test(series(y), "constant", lags=0)
        assert pp.statistic == pytest.approx(adf.statistic, abs=1e-8)

    def test_auto_bandwidth_recorded(self):
        y = walk(41, 46)
        res = pp_test(series(y), "constant")
        assert res.lags_or_bandwidth == 3  # floor(4 * (45/100)^(2/9))
        assert res.n_effective == 45

    def test_affine_invariance(self):
        y = walk(42, 120)
        a = pp_test(series(y), "constant", bandwidth=4).statistic
        b = pp_test(series(3.1 * y + 5.0), "constant", bandwidth=4).statistic
        assert b == pytest.approx(a, abs=1e-8)

    def test_too_short(self):
        with pytest.raises(SeriesTooShort):
            pp_test(series(np.arange(11.0) + np.sin(np.arange(11.0))))

    def test_size_under_ma_errors(self):
        # random walk with MA(1) innovations: the scenario the correction
        # exists for; nominal 5% level should hold loosely
        rejections = 0
        reps = 1000
        for rep in range(reps):
            rng = replication_rng(902, rep)
            eps = rng.standard_normal(501)
            u = eps[1:] + 0.5 * eps[:-1]
            y = np.cumsum(u)
            rejections += pp_test(series(y), "constant").rejects_at(0.05)
        assert 0.02 <= rejections / reps <= 0.10


class TestClassifyIntegration:
    def test_white_noise_is_i0(self):
        hits = 0
        for rep in range(60):
            rng = replication_rng(903, rep)
            hits += classify_integration(series(rng.standard_normal(300)), "adf") == "I0"
        assert hits / 60 >= 0.9

    def test_random_walk_is_i1(self):
        hits = 0
        for rep in range(60):
            rng = replication_rng(904, rep)
            y = np.cumsum(rng.standard_normal(300))
            hits += classify_integration(series(y), "adf") == "I1"
        assert hits / 60 >= 0.85

    def test_double_cumulation_flags_higher(self):
        hits = 0
        for rep in range(60):
            rng = replication_rng(905, rep)
            y = np.cumsum(np.cumsum(rng.standard_normal(300)))
            hits += classify_integration(series(y), "adf") == "higher"
        assert hits / 60 >= 0.75

    def test_snapshot_lngdp_is_i1(self, snapshot_logs):
        assert classify_integration(snapshot_logs.get("lngdp"), "adf") == "I1"


class TestCriticalValueOverride:
    def test_simulated_quantiles_can_replace_bundled(self):
        from cointlab.cv_tables import simulate_df_quantiles

        y = walk(45, 100)
        tb = simulate_df_quantiles("constant", T=99, reps=10000, seed=9)
        res = adf_test(series(y), "constant", lags=0, critical_values=tb.levels)
        assert res.critical_values == tb.levels
        for level, cv in tb.levels.items():
            assert res.rejects_at(level) == (res.statistic < cv)
        pp = pp_test(series(y), "constant", critical_values=tb.levels)
        assert pp.critical_values == tb.levels
