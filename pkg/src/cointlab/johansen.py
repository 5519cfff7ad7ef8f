"""Reduced-rank cointegration analysis: the Johansen trace and
max-eigenvalue tests, maximum-likelihood VECM estimation with normalized
long-run vectors, the error-correction term, and short-run block-exogeneity
Wald tests.

The procedure (Johansen 1988; Johansen and Juselius 1990) concentrates the
short-run dynamics out of

    dY_t = alpha beta' Y_{t-1} + Gamma_1 dY_{t-1} + ... + Gamma_{p-1} dY_{t-p+1} + mu + u_t

by regressing dY_t and Y_{t-1} on the lagged differences (and the
unrestricted deterministics), then solves the generalized eigenproblem of the
product-moment matrices of the two residual sets.  Long-run inference on the
normalized cointegrating vector follows the mixed-Gaussian asymptotics in
Lutkepohl (2005, ch. 7).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from . import cv_tables
from .errors import (
    InsufficientObservations,
    InvalidRank,
    UnknownVariable,
)
from .linstats import generalized_eigen, tail_probability
from .series import Dataset, TimeSeries

DET_SPECS = ("none", "restricted_constant", "unrestricted_constant")


def _residualize(Y: np.ndarray, Z: Optional[np.ndarray]) -> np.ndarray:
    if Z is None or Z.shape[1] == 0:
        return Y
    coef, *_ = np.linalg.lstsq(Z, Y, rcond=None)
    return Y - Z @ coef


def _concentrated(Y: np.ndarray, p: int, det_spec: str):
    """Residual pairs (R0, R1) of the reduced-rank regression plus the pieces
    the second estimation stage reuses.

    R0: dY_t and R1: Y_{t-1} (augmented with a constant column under the
    restricted-constant case), both after the lagged differences (and the
    unrestricted constant, when present) have been partialled out.
    """
    if det_spec not in DET_SPECS:
        raise ValueError(f"det_spec must be one of {DET_SPECS}, got {det_spec!r}")
    T, d = Y.shape
    if p < 1:
        raise ValueError("lag order must be >= 1")
    n = T - p
    if n < d * p + d + 2:
        raise InsufficientObservations(
            f"T - p = {n} too small for d = {d}, p = {p}"
        )
    dY = np.diff(Y, axis=0)
    dep = dY[p - 1 :]  # dY_t, t = p..T-1
    lvl = Y[p - 1 : T - 1]  # Y_{t-1}
    zcols = [dY[p - 1 - j : T - 1 - j] for j in range(1, p)]
    if det_spec == "unrestricted_constant":
        zcols.append(np.ones((n, 1)))
    Z = np.hstack(zcols) if zcols else None
    L = np.hstack([lvl, np.ones((n, 1))]) if det_spec == "restricted_constant" else lvl
    r0 = _residualize(dep, Z)
    r1 = _residualize(L, Z)
    return r0, r1, dep, lvl, Z, n


def _eigen_decomposition(r0: np.ndarray, r1: np.ndarray, n: int):
    """Eigenvalues/vectors of S10 S00^-1 S01 v = lambda S11 v, descending."""
    s00 = r0.T @ r0 / n
    s01 = r0.T @ r1 / n
    s11 = r1.T @ r1 / n
    a = s01.T @ np.linalg.solve(s00, s01)
    pairs = generalized_eigen(a, s11)
    values = np.array([p.eigenvalue for p in pairs])
    vectors = np.column_stack([p.eigenvector for p in pairs])
    return values, vectors, s00, s01, s11


@dataclass(frozen=True)
class JohansenResult:
    """Trace / max-eigenvalue statistics over all hypothesized ranks."""

    names: Tuple[str, ...]
    det_spec: str
    lag_order: int
    eigenvalues: np.ndarray  # (d,), descending, in [0, 1)
    trace_stats: np.ndarray  # (d,), index r = 0..d-1
    max_eigen_stats: np.ndarray  # (d,)
    trace_cv_5pct: np.ndarray  # (d,)
    max_eigen_cv_5pct: np.ndarray  # (d,)
    selected_rank: int
    n_effective: int

    def trace_stat(self, r: int) -> float:
        if r == len(self.eigenvalues):
            return 0.0  # empty sum
        return float(self.trace_stats[r])

    def max_eigen_stat(self, r: int) -> float:
        return float(self.max_eigen_stats[r])


def johansen_test(
    data: Dataset, p: int, det_spec: str = "unrestricted_constant"
) -> JohansenResult:
    """Johansen cointegration rank test on a year-aligned system.

    Statistics for hypothesized rank r:

        trace(r)     = -n * sum_{i>r} ln(1 - lambda_i)
        max_eigen(r) = -n * ln(1 - lambda_{r+1})

    ``selected_rank`` is the first r whose trace statistic falls below the
    bundled 5% critical value (d when all reject).
    """
    Y = data.matrix()
    d = Y.shape[1]
    r0, r1, _, _, _, n = _concentrated(Y, p, det_spec)
    values, _, _, _, _ = _eigen_decomposition(r0, r1, n)
    lam = np.clip(values[:d], 0.0, 1.0 - 1e-15)

    log_terms = np.log1p(-lam)
    trace = -n * (np.cumsum(log_terms[::-1])[::-1])
    max_eigen = -n * log_terms
    cv_trace = np.array(
        [cv_tables.lookup("johansen_trace", det_spec, d - r, 0.05) for r in range(d)]
    )
    cv_max = np.array(
        [cv_tables.lookup("johansen_max_eigen", det_spec, d - r, 0.05) for r in range(d)]
    )
    selected = d
    for r in range(d):
        if trace[r] < cv_trace[r]:
            selected = r
            break
    return JohansenResult(
        names=data.names,
        det_spec=det_spec,
        lag_order=p,
        eigenvalues=lam,
        trace_stats=trace,
        max_eigen_stats=max_eigen,
        trace_cv_5pct=cv_trace,
        max_eigen_cv_5pct=cv_max,
        selected_rank=selected,
        n_effective=n,
    )


@dataclass(frozen=True)
class VecmModel:
    """Estimated VECM with rank-r long-run structure.

    ``beta`` is normalized so the outcome variable's coefficient is 1 in each
    cointegrating column; under the unrestricted-constant case a backed-out
    constant row (mean-centering the error-correction term) is appended and
    carries no standard error.  ``names`` lists the outcome first.
    """

    names: Tuple[str, ...]
    outcome: str
    rank: int
    lag_order: int
    det_spec: str
    beta: np.ndarray  # (d [+1], r)
    beta_se: np.ndarray  # same shape; nan where no inference applies
    beta_z: np.ndarray
    beta_p: np.ndarray
    has_const_row: bool
    alpha: np.ndarray  # (d, r)
    gamma: np.ndarray  # (p-1, d, d)
    intercepts: np.ndarray  # (d,)
    residuals: np.ndarray  # (n, d)
    sigma_u: np.ndarray  # (d, d)
    eigenvalues: np.ndarray
    n_effective: int
    first_year: int
    levels: np.ndarray  # (T, d) reordered levels the model was fit on
    design: np.ndarray  # (n, k) second-stage regressors [ect, diffs..., const?]
    design_coefs: np.ndarray  # (k, d)
    design_xtx_inv: np.ndarray  # (k, k)
    resid_ss: np.ndarray  # (d,)

    @property
    def n_diff_lags(self) -> int:
        return self.lag_order - 1

    def equation_index(self, name: str) -> int:
        if name not in self.names:
            raise UnknownVariable(f"{name!r} not in system {self.names}")
        return self.names.index(name)

    def diff_column(self, var: str, lag_j: int) -> int:
        """Design column of the lag-j difference of ``var``."""
        d = len(self.names)
        return self.rank + (lag_j - 1) * d + self.equation_index(var)


def vecm_fit(
    data: Dataset,
    p: int,
    r: int,
    det_spec: str = "unrestricted_constant",
    outcome: Optional[str] = None,
) -> VecmModel:
    """Estimate a rank-r VECM with the long-run vectors normalized on
    ``outcome`` (default: the dataset's first series).

    beta comes from the leading eigenvectors of the reduced-rank problem; the
    adjustment coefficients, short-run matrices, and intercepts are then OLS
    of dY_t on the lagged error-correction term(s), lagged differences and
    deterministics.  Standard errors for the free rows of beta use the
    mixed-Gaussian asymptotic covariance of the normalized cointegrating
    vector (Lutkepohl 2005, sec. 7.2).
    """
    d = len(data.names)
    if not 1 <= r < d:
        raise InvalidRank(f"rank must satisfy 1 <= r < d = {d}, got {r}")
    outcome = outcome or data.names[0]
    if outcome not in data.names:
        raise UnknownVariable(f"outcome {outcome!r} not in {data.names}")
    ordered = (outcome,) + tuple(nm for nm in data.names if nm != outcome)
    data = data.select(ordered)
    Y = data.matrix()
    T = Y.shape[0]

    r0, r1, dep, lvl, Z, n = _concentrated(Y, p, det_spec)
    values, vectors, _, _, _ = _eigen_decomposition(r0, r1, n)
    lam = np.clip(values[:d], 0.0, 1.0 - 1e-15)

    beta_free = vectors[:, :r]
    top = beta_free[:r, :r]
    if abs(np.linalg.det(top)) < 1e-12:
        raise InvalidRank(
            f"outcome block of the cointegrating vectors is singular; "
            f"cannot normalize on {outcome!r}"
        )
    beta_core = beta_free @ np.linalg.inv(top)  # rows: ordered variables (+ const)

    # error-correction term over the estimation sample
    L = np.hstack([lvl, np.ones((n, 1))]) if det_spec == "restricted_constant" else lvl
    ect = L @ beta_core
    has_const_row = det_spec != "none"
    if det_spec == "unrestricted_constant":
        const_row = -ect.mean(axis=0)
        ect = ect + const_row
        beta = np.vstack([beta_core, const_row])
    else:
        beta = beta_core

    # second stage: dY_t on [ect_{t-1}, lagged differences, unrestricted const]
    dY = np.diff(Y, axis=0)
    xcols = [ect]
    for j in range(1, p):
        xcols.append(dY[p - 1 - j : T - 1 - j])
    if det_spec == "unrestricted_constant":
        xcols.append(np.ones((n, 1)))
    X = np.hstack(xcols)
    coefs, *_ = np.linalg.lstsq(X, dep, rcond=None)  # (k, d)
    resid = dep - X @ coefs
    sigma_u = resid.T @ resid / n

    alpha = coefs[:r].T  # (d, r)
    gamma = np.empty((p - 1, d, d))
    for j in range(p - 1):
        gamma[j] = coefs[r + j * d : r + (j + 1) * d].T
    if det_spec == "unrestricted_constant":
        intercepts = coefs[-1].copy()
    else:
        intercepts = np.zeros(d)

    # normalized-beta inference: cov(vec(beta_free_rows)) =
    #   kron( (R12 R12')^-1 , (alpha' Sigma_u^-1 alpha)^-1 )
    r12 = r1[:, r:]
    n_free = r12.shape[1]
    se = np.full(beta.shape, np.nan)
    z = np.full(beta.shape, np.nan)
    pv = np.full(beta.shape, np.nan)
    if n_free > 0:
        m_inv = np.linalg.inv(r12.T @ r12)
        a_inv = np.linalg.inv(alpha.T @ np.linalg.solve(sigma_u, alpha))
        cov = np.kron(m_inv, a_inv)
        se_free = np.sqrt(np.diag(cov)).reshape((n_free, r), order="C")
        # rows r..(r + n_free - 1) of beta_core are the free rows
        free_rows = slice(r, r + n_free)
        se[free_rows] = se_free
        z[free_rows] = beta[free_rows] / se_free
        pv[free_rows] = 2.0 * np.array(
            [
                [tail_probability("normal", abs(val), ()) for val in row]
                for row in z[free_rows]
            ]
        )

    xtx_inv = np.linalg.inv(X.T @ X)
    resid_ss = np.einsum("ij,ij->j", resid, resid)

    return VecmModel(
        names=data.names,
        outcome=outcome,
        rank=r,
        lag_order=p,
        det_spec=det_spec,
        beta=beta,
        beta_se=se,
        beta_z=z,
        beta_p=pv,
        has_const_row=has_const_row and det_spec == "unrestricted_constant",
        alpha=alpha,
        gamma=gamma,
        intercepts=intercepts,
        residuals=resid,
        sigma_u=sigma_u,
        eigenvalues=lam,
        n_effective=n,
        first_year=data.first_year,
        levels=Y,
        design=X,
        design_coefs=coefs,
        design_xtx_inv=xtx_inv,
        resid_ss=resid_ss,
    )


def ect_series(m: VecmModel, column: int = 0) -> TimeSeries:
    """Error-correction term beta' (augmented Y_t) over the full sample."""
    if not 0 <= column < m.rank:
        raise InvalidRank(f"column must be in 0..{m.rank - 1}")
    d = len(m.names)
    beta_col = m.beta[:, column]
    ect = m.levels @ beta_col[:d]
    if m.beta.shape[0] > d:  # constant row (restricted or backed-out)
        ect = ect + beta_col[d]
    return TimeSeries("ect", m.first_year, ect)


@dataclass(frozen=True)
class WaldResult:
    """Block-exogeneity Wald test of one target equation."""

    target_equation: str
    excluded_block: Tuple[str, ...]
    chi_square: float
    df: int
    p_value: float


def wald_block_exogeneity(
    m: VecmModel, target: str, excluded: Sequence[str]
) -> WaldResult:
    """Test joint nullity of all lagged-difference coefficients of the
    ``excluded`` variables in the ``target`` equation.

    Uses the equation's OLS covariance s_i^2 (X'X)^-1 with the
    degrees-of-freedom-corrected residual variance; the statistic is
    chi-square with (len(excluded) * number of lagged differences) df.
    """
    eq = m.equation_index(target)
    excluded = tuple(excluded)
    if not excluded:
        raise UnknownVariable("excluded block is empty")
    for v in excluded:
        if v not in m.names:
            raise UnknownVariable(f"{v!r} not in system {m.names}")
        if v == target:
            raise UnknownVariable(f"target {target!r} cannot be in the excluded block")
    cols = sorted(
        m.diff_column(v, j) for v in excluded for j in range(1, m.n_diff_lags + 1)
    )
    k = m.design.shape[1]
    s2 = m.resid_ss[eq] / (m.n_effective - k)
    b = m.design_coefs[cols, eq]
    vmat = s2 * m.design_xtx_inv[np.ix_(cols, cols)]
    stat = float(b @ np.linalg.solve(vmat, b))
    df = len(cols)
    return WaldResult(
        target_equation=target,
        excluded_block=excluded,
        chi_square=stat,
        df=df,
        p_value=tail_probability("chi_square", stat, (df,)),
    )
