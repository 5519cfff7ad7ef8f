"""Augmented Dickey-Fuller and Phillips-Perron unit-root tests.

Both tests share the null hypothesis "the series has a unit root" and reject
for sufficiently negative statistics against the bundled finite-sample
Dickey-Fuller critical values.  The ADF test absorbs serial correlation with
lagged-difference regressors; the Phillips-Perron test instead applies the
nonparametric Z-t correction built from a Bartlett long-run variance of the
test regression's residuals (Phillips and Perron, 1988).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Union

import numpy as np

from . import cv_tables
from .errors import SeriesTooShort
from .linstats import auto_bandwidth, newey_west_lrv, ols_fit
from .series import TimeSeries, difference

DET_SPECS = ("constant", "constant_trend")


@dataclass(frozen=True)
class UnitRootResult:
    """Outcome of one unit-root test.

    ``rejected_at`` is the strongest level in {0.01, 0.05, 0.10} at which the
    statistic falls below the critical value, or None when the null survives
    everywhere (left-tail test).
    """

    statistic: float
    det_spec: str
    lags_or_bandwidth: int
    critical_values: Dict[float, float]
    rejected_at: Optional[float]
    n_effective: int
    test: str  # "adf" | "pp"

    def rejects_at(self, level: float) -> bool:
        return self.statistic < self.critical_values[level]

    @property
    def decision(self) -> str:
        if self.rejected_at is None:
            return "fail_to_reject"
        return f"reject_unit_root_at_{int(round(self.rejected_at * 100))}pct"

    @property
    def stars(self) -> str:
        if self.rejected_at == 0.01:
            return "***"
        if self.rejected_at == 0.05:
            return "**"
        if self.rejected_at == 0.10:
            return "*"
        return ""


def _decide(stat: float, cvs: Dict[float, float]) -> Optional[float]:
    for level in (0.01, 0.05, 0.10):
        if stat < cvs[level]:
            return level
    return None


def _det_columns(n: int, det_spec: str) -> np.ndarray:
    if det_spec == "constant":
        return np.empty((n, 0))
    if det_spec == "constant_trend":
        return np.arange(1.0, n + 1.0)[:, None]
    raise ValueError(f"det_spec must be one of {DET_SPECS}, got {det_spec!r}")


def _adf_design(y: np.ndarray, lags: int, det_spec: str):
    """Regressand and regressors of the ADF regression at the given lag order.

    Rows are the last T - 1 - lags observations; regressor order is
    [trend?, level lag, lagged differences...], with the intercept added by
    ols_fit.  Returns (dy_rows, X, index of the level-lag coefficient in the
    fitted parameter vector).
    """
    T = y.size
    dy = np.diff(y)
    rows = slice(lags, T - 1)
    cols = [y[lags : T - 1][:, None]]
    for j in range(1, lags + 1):
        cols.append(dy[lags - j : T - 1 - j][:, None])
    n = T - 1 - lags
    det = _det_columns(n, det_spec)
    X = np.hstack([det] + cols)
    level_ix = 1 + det.shape[1]  # intercept occupies position 0
    return dy[rows], X, level_ix


def _aic_best_lag(y: np.ndarray, det_spec: str, max_lag: int) -> int:
    """Smallest-AIC lag order, all candidates fit on the max_lag sample."""
    T = y.size
    dy = np.diff(y)
    best_lag, best_aic = 0, np.inf
    for lags in range(0, max_lag + 1):
        rows = slice(max_lag, T - 1)
        cols = [y[max_lag : T - 1][:, None]]
        for j in range(1, lags + 1):
            cols.append(dy[max_lag - j : T - 1 - j][:, None])
        n = T - 1 - max_lag
        X = np.hstack([_det_columns(n, det_spec)] + cols)
        fit = ols_fit(dy[rows], X, intercept=True)
        rss = float(fit.residuals @ fit.residuals)
        k = X.shape[1] + 1
        aic = n * np.log(rss / n) + 2 * k
        if aic < best_aic - 1e-12:
            best_aic, best_lag = aic, lags
    return best_lag


def default_max_lag(T: int) -> int:
    """Schwert-style cap for the automatic ADF lag search."""
    return int(np.floor(12.0 * (T / 100.0) ** 0.25))


def adf_test(
    s: TimeSeries,
    det_spec: str = "constant",
    lags: Optional[int] = None,
    critical_values: Optional[Dict[float, float]] = None,
) -> UnitRootResult:
    """Augmented Dickey-Fuller test.

    Regresses the first difference on deterministic terms, the lagged level,
    and ``lags`` lagged differences; the statistic is the t-ratio on the
    lagged level.  ``lags=None`` selects the order by AIC over
    0..floor(12 (T/100)^(1/4)), every candidate fit on the common sample.
    ``critical_values`` overrides the bundled table (e.g. with quantiles from
    a fresh Monte Carlo run at the exact sample size).
    """
    y = s.values
    T = y.size
    if lags is None:
        max_lag = min(default_max_lag(T), max(T - 12, 0))
        if T < max_lag + 10:
            raise SeriesTooShort(f"{T} observations are too few for an ADF lag search")
        lags = _aic_best_lag(y, det_spec, max_lag)
    if lags < 0:
        raise ValueError("lags must be >= 0")
    if T < lags + 10:
        raise SeriesTooShort(f"need at least lags + 10 = {lags + 10} observations, have {T}")
    dep, X, level_ix = _adf_design(y, lags, det_spec)
    fit = ols_fit(dep, X, intercept=True)
    stat = float(fit.t_stats[level_ix])
    n_eff = T - 1 - lags
    cvs = critical_values or cv_tables.df_critical_values(det_spec, n_eff)
    return UnitRootResult(
        statistic=stat,
        det_spec=det_spec,
        lags_or_bandwidth=lags,
        critical_values=cvs,
        rejected_at=_decide(stat, cvs),
        n_effective=n_eff,
        test="adf",
    )


def pp_test(
    s: TimeSeries,
    det_spec: str = "constant",
    bandwidth: Union[str, int] = "auto",
    critical_values: Optional[Dict[float, float]] = None,
) -> UnitRootResult:
    """Phillips-Perron Z-t test.

    Fits the plain Dickey-Fuller regression (no lag augmentation) and rescales
    the t-ratio with the Bartlett long-run variance of its residuals:

        Z = sqrt(g0 / L2) * t - n * c * (L2 - g0) / (2 * sqrt(L2))

    where g0 is the residual second moment, L2 the long-run variance at the
    chosen bandwidth, and c = se(alpha) / s the design part of the standard
    error.  With bandwidth 0 the correction vanishes and Z equals the lag-0
    ADF statistic.
    """
    y = s.values
    T = y.size
    if T < 12:
        raise SeriesTooShort(f"need at least 12 observations, have {T}")
    dep, X, level_ix = _adf_design(y, 0, det_spec)
    fit = ols_fit(dep, X, intercept=True)
    u = fit.residuals
    n = u.size
    if bandwidth == "auto":
        bw = auto_bandwidth(u)
    else:
        bw = int(bandwidth)
    gamma0 = float(u @ u) / n
    lam2 = newey_west_lrv(u, bw)
    s2 = float(u @ u) / fit.dof
    c = float(fit.standard_errors[level_ix]) / np.sqrt(s2)
    t_alpha = float(fit.t_stats[level_ix])
    stat = np.sqrt(gamma0 / lam2) * t_alpha - n * c * (lam2 - gamma0) / (2.0 * np.sqrt(lam2))
    n_eff = T - 1
    cvs = critical_values or cv_tables.df_critical_values(det_spec, n_eff)
    return UnitRootResult(
        statistic=float(stat),
        det_spec=det_spec,
        lags_or_bandwidth=bw,
        critical_values=cvs,
        rejected_at=_decide(float(stat), cvs),
        n_effective=n_eff,
        test="pp",
    )


def classify_integration(s: TimeSeries, test: str = "adf", det_spec: str = "constant") -> str:
    """I(0) / I(1) / higher classification at the 5% level.

    The level test uses ``det_spec``; the differenced test always uses the
    constant-only specification (a differenced macro series has no trend left
    to model).
    """
    runner = {"adf": adf_test, "pp": pp_test}[test]
    level = runner(s, det_spec)
    if level.rejects_at(0.05):
        return "I0"
    diff_result = runner(difference(s, 1), "constant")
    if diff_result.rejects_at(0.05):
        return "I1"
    return "higher"
