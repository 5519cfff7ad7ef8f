"""Residual diagnostics for fitted systems: multivariate LM autocorrelation
and Jarque-Bera normality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .errors import InsufficientObservations, SeriesTooShort
from .linstats import tail_probability


@dataclass(frozen=True)
class DiagnosticResult:
    test_name: str  # "lm_autocorrelation" | "jarque_bera"
    scope: str  # equation name or "ALL"
    statistic: float
    df: int
    p_value: float


def lm_autocorrelation(residuals: np.ndarray, lag: int) -> DiagnosticResult:
    """Multivariate LM test for residual autocorrelation at ``lag``.

    Auxiliary regression of the residuals on an intercept and their lag-j
    values (pre-sample lags set to zero); the statistic is the multivariate
    T R^2 analog

        LM = T * (d - tr(S0^-1 Se))

    with S0, Se the residual covariances before and after augmentation,
    chi-square with d^2 degrees of freedom under the null of no serial
    correlation.
    """
    U = np.asarray(residuals, dtype=float)
    if U.ndim != 2:
        raise ValueError("residuals must be a T x d matrix")
    T, d = U.shape
    if lag < 1:
        raise ValueError("lag must be >= 1")
    if T <= d * lag + d + 2:
        raise InsufficientObservations(
            f"T = {T} too small for d = {d}, lag = {lag}"
        )
    U_lag = np.zeros_like(U)
    U_lag[lag:] = U[:-lag]
    X = np.column_stack([np.ones(T), U_lag])
    coef, *_ = np.linalg.lstsq(X, U, rcond=None)
    E = U - X @ coef
    Uc = U - U.mean(axis=0)
    s0 = Uc.T @ Uc / T
    se = E.T @ E / T
    stat = float(T * (d - np.trace(np.linalg.solve(s0, se))))
    df = d * d
    return DiagnosticResult(
        test_name="lm_autocorrelation",
        scope="ALL",
        statistic=stat,
        df=df,
        p_value=tail_probability("chi_square", stat, (df,)),
    )


def _jb_statistic(u: np.ndarray) -> float:
    T = u.size
    c = u - u.mean()
    m2 = float(c @ c) / T
    m3 = float(np.sum(c**3)) / T
    m4 = float(np.sum(c**4)) / T
    skew = m3 / m2**1.5
    kurt = m4 / m2**2
    return T / 6.0 * (skew**2 + 0.25 * (kurt - 3.0) ** 2)


def jarque_bera(
    residuals: np.ndarray, names: Optional[Sequence[str]] = None
) -> List[DiagnosticResult]:
    """Jarque-Bera normality tests per equation plus the joint statistic.

    Each equation contributes JB = T/6 (skew^2 + (kurt - 3)^2 / 4) with 2 df
    from the raw (un-orthogonalized) residual column; the joint row "ALL" is
    the sum with 2d df.
    """
    U = np.asarray(residuals, dtype=float)
    if U.ndim == 1:
        U = U[:, None]
    T, d = U.shape
    if T < 8:
        raise SeriesTooShort(f"need at least 8 observations, have {T}")
    if names is None:
        names = [f"eq{i + 1}" for i in range(d)]
    if len(names) != d:
        raise ValueError(f"{d} equations but {len(names)} names")
    results = []
    total = 0.0
    for i, nm in enumerate(names):
        jb = _jb_statistic(U[:, i])
        total += jb
        results.append(
            DiagnosticResult(
                test_name="jarque_bera",
                scope=str(nm),
                statistic=jb,
                df=2,
                p_value=tail_probability("chi_square", jb, (2,)),
            )
        )
    results.append(
        DiagnosticResult(
            test_name="jarque_bera",
            scope="ALL",
            statistic=total,
            df=2 * d,
            p_value=tail_probability("chi_square", total, (2 * d,)),
        )
    )
    return results
