import numpy as np
import pytest

from cointlab import jarque_bera, lm_autocorrelation
from cointlab.cv_tables import replication_rng
from cointlab.errors import InsufficientObservations, SeriesTooShort
from cointlab.linstats import tail_probability

from conftest import ar1


def gaussian_moment_sample():
    """Symmetric four-point sample with exact Gaussian skewness/kurtosis.

    One pair at +/-sqrt(10) and eight pairs at +/-1: m2 = 2, m4 = 12 = 3 m2^2.
    """
    a = np.sqrt(10.0)
    return np.array([a, -a] + [1.0, -1.0] * 8)


class TestJarqueBera:
    def test_exact_zero_at_gaussian_moments(self):
        sample = gaussian_moment_sample()
        res = jarque_bera(sample[:, None])
        assert res[0].statistic == pytest.approx(0.0, abs=1e-12)
        assert res[0].p_value == 1.0

    def test_joint_is_sum_of_equations(self):
        rng = replication_rng(80, 0)
        U = rng.standard_normal((200, 4))
        results = jarque_bera(U, names=["a", "b", "c", "d"])
        per_eq = results[:-1]
        joint = results[-1]
        assert joint.scope == "ALL"
        assert joint.statistic == pytest.approx(
            sum(r.statistic for r in per_eq), abs=1e-10
        )
        assert joint.df == 8
        assert all(r.df == 2 for r in per_eq)

    def test_scale_invariance(self):
        rng = replication_rng(81, 0)
        U = rng.standard_normal((150, 2))
        a = jarque_bera(U)
        b = jarque_bera(U * np.array([10.0, 0.01]))
        for ra, rb in zip(a, b):
            assert rb.statistic == pytest.approx(ra.statistic, rel=1e-10)

    def test_p_value_identity(self):
        rng = replication_rng(82, 0)
        U = rng.standard_normal((100, 3))
        for r in jarque_bera(U):
            assert r.p_value == pytest.approx(
                tail_probability("chi_square", r.statistic, (r.df,)), abs=1e-10
            )

    def test_detects_heavy_tails(self):
        rng = replication_rng(83, 0)
        U = rng.standard_t(3, size=(2000, 1))
        res = jarque_bera(U)
        assert res[0].p_value < 0.01

    def test_too_short(self):
        with pytest.raises(SeriesTooShort):
            jarque_bera(np.ones((5, 2)))

    def test_size_quick(self):
        rejections = 0
        reps = 200
        for rep in range(reps):
            rng = replication_rng(84, rep)
            U = rng.standard_normal((1000, 1))
            rejections += jarque_bera(U)[0].p_value < 0.05
        assert 0.02 <= rejections / reps <= 0.09


class TestLmAutocorrelation:
    def test_nonnegative_and_p_in_unit_interval(self):
        rng = replication_rng(85, 0)
        U = rng.standard_normal((300, 4))
        for j in (1, 2, 3):
            r = lm_autocorrelation(U, j)
            assert r.statistic >= 0.0
            assert 0.0 <= r.p_value <= 1.0
            assert r.df == 16

    def test_scale_invariance(self):
        rng = replication_rng(86, 0)
        U = rng.standard_normal((200, 3))
        a = lm_autocorrelation(U, 1)
        b = lm_autocorrelation(U * np.array([5.0, 0.2, 40.0]), 1)
        assert b.statistic == pytest.approx(a.statistic, rel=1e-10)

    def test_p_value_identity(self):
        rng = replication_rng(87, 0)
        U = rng.standard_normal((150, 2))
        r = lm_autocorrelation(U, 2)
        assert r.p_value == pytest.approx(
            tail_probability("chi_square", r.statistic, (r.df,)), abs=1e-10
        )

    def test_detects_ar1_residuals(self):
        hits = 0
        reps = 100
        for rep in range(reps):
            rng = replication_rng(88, rep)
            U = np.column_stack([ar1(rng, 1000, 0.5) for _ in range(4)])
            hits += lm_autocorrelation(U, 1).p_value < 0.05
        assert hits / reps >= 0.95

    def test_size_quick(self):
        rejections = 0
        reps = 200
        for rep in range(reps):
            rng = replication_rng(89, rep)
            U = rng.standard_normal((1000, 4))
            rejections += lm_autocorrelation(U, 1).p_value < 0.05
        assert 0.02 <= rejections / reps <= 0.09

    def test_insufficient_observations(self):
        with pytest.raises(InsufficientObservations):
            lm_autocorrelation(np.ones((10, 4)), 2)
