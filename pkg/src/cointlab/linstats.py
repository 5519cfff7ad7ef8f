"""Least squares with classical inference, HAC long-run variance, symmetric
generalized eigenproblems, and upper-tail probabilities.

These are the numerical primitives every estimator in the package is built
on.  Least squares goes through an orthogonal (SVD) factorization of the
design matrix rather than the normal equations; near-collinear macro series
make the conditioning difference matter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np
from scipy import linalg as sla
from scipy import stats as sstats

from .errors import (
    BandwidthTooLarge,
    InsufficientObservations,
    InvalidParameters,
    NotPositiveDefinite,
    RankDeficient,
    SeriesTooShort,
)

#: Relative singular-value cutoff below which the design is treated as rank
#: deficient.
RANK_RTOL = 1e-10


@dataclass(frozen=True)
class OlsResult:
    """Coefficients and classical (homoskedastic) inference for one equation.

    When an intercept is requested it occupies position 0 of every
    coefficient-indexed field.  ``cov_params`` is s^2 (X'X)^{-1}, the
    covariance the t statistics are built from.
    """

    coefficients: np.ndarray
    standard_errors: np.ndarray
    t_stats: np.ndarray
    p_values: np.ndarray
    r_squared: float
    adj_r_squared: float
    f_stat: float
    f_p_value: float
    residuals: np.ndarray
    dof: int
    cov_params: np.ndarray
    intercept: bool


def ols_fit(y: np.ndarray, X: np.ndarray, intercept: bool = True) -> OlsResult:
    """Fit y = X b (+ const) by least squares via SVD.

    Parameters
    ----------
    y : (n,) array
    X : (n, k) array of regressors, without the intercept column.
    intercept : bool
        Prepend a constant column when True.

    Raises
    ------
    InsufficientObservations
        If n <= number of estimated parameters.
    RankDeficient
        If the smallest singular value of the design falls below
        ``RANK_RTOL`` times the largest.
    """
    y = np.asarray(y, dtype=float).ravel()
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    n = y.size
    if X.shape[0] != n:
        raise ValueError(f"y has {n} rows but X has {X.shape[0]}")
    design = np.column_stack([np.ones(n), X]) if intercept else X
    k = design.shape[1]
    if n <= k:
        raise InsufficientObservations(f"{n} observations for {k} parameters")

    u, sv, vt = np.linalg.svd(design, full_matrices=False)
    if sv[-1] <= RANK_RTOL * sv[0]:
        raise RankDeficient(
            f"smallest/largest singular value ratio {sv[-1] / sv[0]:.2e} below {RANK_RTOL:.0e}"
        )
    coef = vt.T @ ((u.T @ y) / sv)
    resid = y - design @ coef
    dof = n - k
    rss = float(resid @ resid)
    sigma2 = rss / dof
    xtx_inv = (vt.T / sv**2) @ vt
    cov = sigma2 * xtx_inv
    se = np.sqrt(np.diag(cov))
    t_stats = coef / se
    p_values = 2.0 * sstats.t.sf(np.abs(t_stats), dof)

    if intercept:
        tss = float(np.sum((y - y.mean()) ** 2))
    else:
        tss = float(y @ y)
    r2 = 1.0 - rss / tss if tss > 0 else 0.0
    n_slopes = k - 1 if intercept else k
    adj_r2 = 1.0 - (1.0 - r2) * (n - 1) / dof if intercept else 1.0 - (1.0 - r2) * n / dof
    if n_slopes > 0 and rss > 0:
        f_stat = ((tss - rss) / n_slopes) / sigma2
        f_p = float(sstats.f.sf(f_stat, n_slopes, dof))
    elif n_slopes > 0:
        f_stat, f_p = np.inf, 0.0
    else:
        f_stat, f_p = np.nan, np.nan
    return OlsResult(
        coefficients=coef,
        standard_errors=se,
        t_stats=t_stats,
        p_values=p_values,
        r_squared=r2,
        adj_r_squared=adj_r2,
        f_stat=float(f_stat),
        f_p_value=float(f_p),
        residuals=resid,
        dof=dof,
        cov_params=cov,
        intercept=intercept,
    )


def newey_west_lrv(u: np.ndarray, bandwidth: int) -> float:
    """Bartlett-kernel long-run variance of ``u``.

    Returns gamma_0 + 2 * sum_{j=1..bandwidth} w_j gamma_j with weights
    w_j = 1 - j/(bandwidth+1) and autocovariances
    gamma_j = sum_{t>j} u_t u_{t-j} / (T - j).  With bandwidth 0 this is the
    plain second moment of ``u``.
    """
    u = np.asarray(u, dtype=float).ravel()
    T = u.size
    if bandwidth < 0:
        raise ValueError("bandwidth must be >= 0")
    if T <= bandwidth:
        raise BandwidthTooLarge(f"bandwidth {bandwidth} with only {T} observations")
    lrv = float(u @ u) / T
    for j in range(1, bandwidth + 1):
        gamma_j = float(u[j:] @ u[:-j]) / (T - j)
        w_j = 1.0 - j / (bandwidth + 1.0)
        lrv += 2.0 * w_j * gamma_j
    return lrv


def auto_bandwidth(u: np.ndarray) -> int:
    """Bartlett-kernel rule-of-thumb bandwidth: floor(4 * (T/100)^(2/9))."""
    T = np.asarray(u).size
    if T < 8:
        raise SeriesTooShort(f"need at least 8 observations, have {T}")
    return int(np.floor(4.0 * (T / 100.0) ** (2.0 / 9.0)))


@dataclass(frozen=True)
class EigenPair:
    eigenvalue: float
    eigenvector: np.ndarray


def generalized_eigen(A: np.ndarray, B: np.ndarray) -> List[EigenPair]:
    """Solve A v = lambda B v for symmetric A and SPD B.

    Eigenvalues come back descending; eigenvectors are normalized so that
    v' B v = 1 (the normalization reduced-rank regression wants).
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.shape != B.shape or A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("A and B must be square matrices of the same size")
    A = 0.5 * (A + A.T)
    B = 0.5 * (B + B.T)
    try:
        np.linalg.cholesky(B)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite("B is not positive definite") from exc
    vals, vecs = sla.eigh(A, B)
    order = np.argsort(vals)[::-1]
    return [EigenPair(float(vals[i]), vecs[:, i].copy()) for i in order]


_TAIL_FUNCS = {
    "normal": lambda x, params: sstats.norm.sf(x),
    "student_t": lambda x, params: sstats.t.sf(x, params[0]),
    "chi_square": lambda x, params: sstats.chi2.sf(x, params[0]),
    "f": lambda x, params: sstats.f.sf(x, params[0], params[1]),
}

_TAIL_NPARAMS = {"normal": 0, "student_t": 1, "chi_square": 1, "f": 2}


def tail_probability(dist: str, x: float, params: Sequence[float] = ()) -> float:
    """Upper-tail probability P(X > x) for the named distribution.

    ``params`` carries degrees of freedom: none for ``normal``, (df,) for
    ``student_t`` and ``chi_square``, (df1, df2) for ``f``.  Two-sided
    variants are composed by callers.
    """
    if dist not in _TAIL_FUNCS:
        raise InvalidParameters(f"unknown distribution {dist!r}")
    params = tuple(float(p) for p in params)
    if len(params) != _TAIL_NPARAMS[dist]:
        raise InvalidParameters(
            f"{dist} takes {_TAIL_NPARAMS[dist]} dof parameter(s), got {len(params)}"
        )
    if any(p <= 0 for p in params):
        raise InvalidParameters(f"degrees of freedom must be positive, got {params}")
    return float(_TAIL_FUNCS[dist](float(x), params))
