import numpy as np
import pytest

from cointlab import (
    Dataset,
    TimeSeries,
    adf_test,
    ect_series,
    johansen_test,
    ols_fit,
    vecm_fit,
    wald_block_exogeneity,
)
from cointlab.cv_tables import replication_rng
from cointlab.errors import InvalidRank, UnknownVariable
from cointlab.linstats import tail_probability

from conftest import cointegrated_pair, drifting_walks


def make_dataset(Y, names=None):
    names = names or [f"y{i}" for i in range(Y.shape[1])]
    return Dataset([TimeSeries(n, 1950, Y[:, i]) for i, n in enumerate(names)])


@pytest.fixture(scope="module")
def coint_system():
    rng = replication_rng(70, 0)
    y1, y2 = cointegrated_pair(rng, 400, slope=2.0)
    extra = np.cumsum(rng.standard_normal(400) + 0.3)
    return make_dataset(np.column_stack([y1, y2, extra]), ["a", "b", "c"])


class TestJohansenTest:
    def test_telescoping_identity(self, coint_system, four_var):
        for data, p in ((coint_system, 2), (four_var, 2), (four_var, 3)):
            res = johansen_test(data, p)
            d = len(res.eigenvalues)
            for r in range(d):
                assert res.trace_stat(r) - res.trace_stat(r + 1) == pytest.approx(
                    res.max_eigen_stat(r), abs=1e-8
                )
            assert res.trace_stat(d) == 0.0

    def test_eigenvalues_in_unit_interval(self, coint_system):
        res = johansen_test(coint_system, 2)
        assert np.all(res.eigenvalues >= 0.0)
        assert np.all(res.eigenvalues < 1.0)
        assert np.all(np.diff(res.eigenvalues) <= 1e-12)

    def test_trace_nonincreasing_and_exceeds_max_eigen(self, four_var):
        res = johansen_test(four_var, 2)
        assert np.all(np.diff(res.trace_stats) <= 1e-10)
        assert np.all(res.trace_stats >= res.max_eigen_stats - 1e-10)

    def test_permutation_invariance(self, coint_system):
        base = johansen_test(coint_system, 2)
        shuffled = johansen_test(coint_system.select(["c", "a", "b"]), 2)
        assert np.allclose(base.eigenvalues, shuffled.eigenvalues, atol=1e-8)
        assert np.allclose(base.trace_stats, shuffled.trace_stats, atol=1e-8)

    def test_rescaling_invariance(self, coint_system):
        base = johansen_test(coint_system, 2)
        scaled_series = [
            TimeSeries(s.name, s.start_year, s.values * (100.0 if s.name == "b" else 1.0))
            for s in coint_system.series
        ]
        scaled = johansen_test(Dataset(scaled_series), 2)
        assert np.allclose(base.eigenvalues, scaled.eigenvalues, atol=1e-8)
        assert np.allclose(base.max_eigen_stats, scaled.max_eigen_stats, atol=1e-8)

    def test_n_effective(self, coint_system):
        res = johansen_test(coint_system, 2)
        assert res.n_effective == 400 - 2

    def test_rank_recovery_quick(self):
        hits_c, hits_i = 0, 0
        reps = 150
        for rep in range(reps):
            rng = replication_rng(71, rep)
            y1, y2 = cointegrated_pair(rng, 500)
            ds = make_dataset(np.column_stack([y1, y2]))
            hits_c += johansen_test(ds, 2).selected_rank == 1
            rng2 = replication_rng(72, rep)
            ds0 = make_dataset(drifting_walks(rng2, 500, 2))
            hits_i += johansen_test(ds0, 2).selected_rank == 0
        assert hits_c / reps >= 0.88
        assert hits_i / reps >= 0.88


class TestVecmFit:
    def test_normalization_on_outcome(self, four_var):
        m = vecm_fit(four_var, 2, 1, outcome="lngdp")
        assert m.beta[0, 0] == 1.0
        assert m.names[0] == "lngdp"
        assert m.has_const_row

    def test_known_long_run_vector(self):
        # y1 = 2 * y2 + stationary  =>  normalized beta row for y2 is -2
        errs = []
        for rep in range(10):
            rng = replication_rng(73, rep)
            y1, y2 = cointegrated_pair(rng, 1000, slope=2.0)
            ds = make_dataset(np.column_stack([y1, y2]))
            m = vecm_fit(ds, 2, 1, outcome="y0")
            errs.append(abs(m.beta[1, 0] - (-2.0)))
        assert np.median(errs) < 0.1

    def test_ect_reconstruction_matches_beta(self, four_var):
        m = vecm_fit(four_var, 2, 1, outcome="lngdp")
        ect = ect_series(m)
        d = len(m.names)
        manual = m.levels @ m.beta[:d, 0] + m.beta[d, 0]
        assert np.allclose(ect.values, manual, atol=1e-10)
        assert ect.start_year == four_var.first_year
        assert len(ect) == len(four_var)

    def test_ect_is_stationary_on_snapshot(self, four_var):
        m = vecm_fit(four_var, 2, 1, outcome="lngdp")
        res = adf_test(ect_series(m), "constant")
        assert res.rejected_at is not None and res.rejected_at <= 0.10

    def test_ect_autocorrelation_on_simulated_rank_one(self):
        rng = replication_rng(74, 0)
        y1, y2 = cointegrated_pair(rng, 500)
        m = vecm_fit(make_dataset(np.column_stack([y1, y2])), 2, 1, outcome="y0")
        e = ect_series(m).values
        e = e - e.mean()
        rho1 = (e[1:] @ e[:-1]) / (e @ e)
        assert rho1 < 0.9

    def test_residual_means_near_zero(self, four_var):
        m = vecm_fit(four_var, 2, 1, outcome="lngdp")
        assert np.all(np.abs(m.residuals.mean(axis=0)) < 1e-8)

    def test_beta_inference_shape_and_identity(self, four_var):
        m = vecm_fit(four_var, 2, 1, outcome="lngdp")
        # outcome and backed-out constant rows carry no inference
        assert np.isnan(m.beta_se[0, 0]) and np.isnan(m.beta_se[-1, 0])
        for i in range(1, 4):
            assert m.beta_se[i, 0] > 0
            assert m.beta_z[i, 0] == pytest.approx(m.beta[i, 0] / m.beta_se[i, 0], rel=1e-10)
            expected_p = 2.0 * tail_probability("normal", abs(m.beta_z[i, 0]))
            assert m.beta_p[i, 0] == pytest.approx(expected_p, abs=1e-12)

    def test_rescaling_moves_only_that_beta_row(self, four_var):
        m0 = vecm_fit(four_var, 2, 1, outcome="lngdp")
        scaled_series = [
            TimeSeries(s.name, s.start_year, s.values * (10.0 if s.name == "lnaid" else 1.0))
            for s in four_var.series
        ]
        m1 = vecm_fit(Dataset(scaled_series), 2, 1, outcome="lngdp")
        i_aid = m0.names.index("lnaid")
        for i, nm in enumerate(m0.names):
            if nm == "lnaid":
                assert m1.beta[i, 0] == pytest.approx(m0.beta[i, 0] / 10.0, rel=1e-8)
            else:
                assert m1.beta[i, 0] == pytest.approx(m0.beta[i, 0], rel=1e-8)

    def test_invalid_rank(self, four_var):
        with pytest.raises(InvalidRank):
            vecm_fit(four_var, 2, 0)
        with pytest.raises(InvalidRank):
            vecm_fit(four_var, 2, 4)

    def test_unknown_outcome(self, four_var):
        with pytest.raises(UnknownVariable):
            vecm_fit(four_var, 2, 1, outcome="nope")


@pytest.fixture(scope="module")
def model(four_var):
    return vecm_fit(four_var, 3, 1, outcome="lngdp")


class TestWald:

    def test_degrees_of_freedom(self, model):
        w1 = wald_block_exogeneity(model, "lngdp", ["lnfdi"])
        assert w1.df == model.n_diff_lags == 2
        w3 = wald_block_exogeneity(model, "lngdp", ["lnfdi", "lnrem", "lnaid"])
        assert w3.df == 6

    def test_invariant_to_block_ordering(self, model):
        a = wald_block_exogeneity(model, "lnfdi", ["lngdp", "lnaid"])
        b = wald_block_exogeneity(model, "lnfdi", ["lnaid", "lngdp"])
        assert a.chi_square == pytest.approx(b.chi_square, abs=1e-12)
        assert a.df == b.df

    def test_single_restriction_equals_squared_t(self, four_var):
        # with one lagged difference, excluding one variable is one
        # restriction: the Wald statistic is the squared equation t-ratio
        m = vecm_fit(four_var, 2, 1, outcome="lngdp")
        w = wald_block_exogeneity(m, "lngdp", ["lnrem"])
        assert w.df == 1
        eq = m.names.index("lngdp")
        X = m.design
        fit = ols_fit(m.levels[:, eq][2:] - m.levels[:, eq][1:-1], X, intercept=False)
        col = m.diff_column("lnrem", 1)
        assert w.chi_square == pytest.approx(fit.t_stats[col] ** 2, rel=1e-10)

    def test_p_value_identity(self, model):
        w = wald_block_exogeneity(model, "lnaid", ["lngdp", "lnfdi", "lnrem"])
        assert w.p_value == pytest.approx(
            tail_probability("chi_square", w.chi_square, (w.df,)), abs=1e-14
        )

    def test_unknown_variable_errors(self, model):
        with pytest.raises(UnknownVariable):
            wald_block_exogeneity(model, "lngdp", ["nope"])
        with pytest.raises(UnknownVariable):
            wald_block_exogeneity(model, "nope", ["lnfdi"])
        with pytest.raises(UnknownVariable):
            wald_block_exogeneity(model, "lngdp", ["lngdp"])
        with pytest.raises(UnknownVariable):
            wald_block_exogeneity(model, "lngdp", [])
