"""Unrestricted VAR estimation and lag-order selection.

The information criteria follow the per-observation scaling that annual-macro
practice expects: with n effective observations, total parameter count tp and
Gaussian log likelihood LL,

    AIC  = (-2 LL + 2 tp) / n
    HQIC = (-2 LL + 2 tp ln(ln n)) / n
    SBIC = (-2 LL + tp ln n) / n
    FPE  = |Sigma_u| ((n + m) / (n - m))^d,   m = parameters per equation

and the sequential likelihood-ratio statistic compares lag j against j - 1
with a chi-square(d^2) reference.  All candidate orders are estimated on the
common sample implied by the maximum lag so the criteria are comparable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .errors import InsufficientObservations
from .linstats import tail_probability
from .series import Dataset


@dataclass(frozen=True)
class VarModel:
    """Equation-by-equation OLS estimate of a VAR(p) with intercept."""

    lag_order: int
    names: Tuple[str, ...]
    intercept: np.ndarray  # (d,)
    coef_matrices: np.ndarray  # (p, d, d); A_i[j, k] = effect of var k lag i on var j
    residuals: np.ndarray  # (n, d)
    sigma_u: np.ndarray  # (d, d), denominator n
    log_likelihood: float
    n_effective: int


def _var_design(Y: np.ndarray, p: int):
    T, d = Y.shape
    n = T - p
    dep = Y[p:]
    cols = [np.ones((n, 1))]
    for i in range(1, p + 1):
        cols.append(Y[p - i : T - i])
    return dep, np.hstack(cols)


def var_fit(data: Dataset, p: int) -> VarModel:
    """Fit a VAR(p) by least squares, one equation per variable.

    ``p = 0`` degenerates to the intercept-only model whose residual
    covariance is the (1/n-scaled) sample covariance.
    """
    if p < 0:
        raise ValueError("lag order must be >= 0")
    Y = data.matrix()
    T, d = Y.shape
    n = T - p
    if n < d * p + d + 5:
        raise InsufficientObservations(
            f"T - p = {n} below d*p + d + 5 = {d * p + d + 5} for d = {d}, p = {p}"
        )
    dep, X = _var_design(Y, p)
    coefs, *_ = np.linalg.lstsq(X, dep, rcond=None)  # (1 + d p, d)
    resid = dep - X @ coefs
    sigma_u = resid.T @ resid / n
    sign, logdet = np.linalg.slogdet(sigma_u)
    if sign <= 0:
        raise InsufficientObservations("residual covariance is singular")
    ll = -0.5 * n * (d * math.log(2.0 * math.pi) + d + logdet)
    A = np.empty((p, d, d))
    for i in range(p):
        A[i] = coefs[1 + i * d : 1 + (i + 1) * d].T
    return VarModel(
        lag_order=p,
        names=data.names,
        intercept=coefs[0].copy(),
        coef_matrices=A,
        residuals=resid,
        sigma_u=sigma_u,
        log_likelihood=float(ll),
        n_effective=n,
    )


@dataclass(frozen=True)
class LagRow:
    lag: int
    log_likelihood: float
    lr_stat: Optional[float]
    lr_p_value: Optional[float]
    fpe: float
    aic: float
    hqic: float
    sbic: float


@dataclass(frozen=True)
class LagSelectionTable:
    rows: Tuple[LagRow, ...]
    starred: Dict[str, int]  # criterion -> starred lag
    chosen_lag: int
    n_effective: int

    def criterion_values(self, criterion: str) -> List[float]:
        return [getattr(r, criterion) for r in self.rows]


def criteria_for_model(m: VarModel) -> Dict[str, float]:
    """Recompute FPE/AIC/HQIC/SBIC for a fitted VAR (deterministic in the model)."""
    n, d, p = m.n_effective, len(m.names), m.lag_order
    per_eq = d * p + 1
    tp = d * per_eq
    ll = m.log_likelihood
    det_sigma = float(np.linalg.det(m.sigma_u))
    fpe = det_sigma * ((n + per_eq) / (n - per_eq)) ** d
    aic = (-2.0 * ll + 2.0 * tp) / n
    hqic = (-2.0 * ll + 2.0 * tp * math.log(math.log(n))) / n
    sbic = (-2.0 * ll + tp * math.log(n)) / n
    return {"fpe": fpe, "aic": aic, "hqic": hqic, "sbic": sbic}


def select_lag(data: Dataset, max_lag: int) -> LagSelectionTable:
    """Criteria grid over lag orders 0..max_lag on the common sample.

    Every order is estimated on the last T - max_lag observations.  Each
    information criterion stars its minimum (ties toward the smaller lag); the
    LR column stars the largest order whose sequential test rejects at 5%
    (lag 0 when none does).  ``chosen_lag`` is the FPE minimizer.
    """
    if max_lag < 1:
        raise ValueError("max_lag must be >= 1")
    d = len(data.names)
    models = []
    for j in range(0, max_lag + 1):
        sub = data.drop_first(max_lag - j)
        models.append(var_fit(sub, j))
    n = models[0].n_effective

    rows: List[LagRow] = []
    for j, m in enumerate(models):
        crit = criteria_for_model(m)
        if j == 0:
            lr, lr_p = None, None
        else:
            lr = 2.0 * (m.log_likelihood - models[j - 1].log_likelihood)
            lr_p = tail_probability("chi_square", lr, (d * d,))
        rows.append(
            LagRow(
                lag=j,
                log_likelihood=m.log_likelihood,
                lr_stat=lr,
                lr_p_value=lr_p,
                fpe=crit["fpe"],
                aic=crit["aic"],
                hqic=crit["hqic"],
                sbic=crit["sbic"],
            )
        )

    starred: Dict[str, int] = {}
    for criterion in ("fpe", "aic", "hqic", "sbic"):
        values = [getattr(r, criterion) for r in rows]
        starred[criterion] = int(np.argmin(values))  # first minimum = smaller lag
    lr_star = 0
    for r in rows[1:]:
        if r.lr_p_value is not None and r.lr_p_value < 0.05:
            lr_star = r.lag
    starred["lr"] = lr_star

    return LagSelectionTable(
        rows=tuple(rows),
        starred=starred,
        chosen_lag=starred["fpe"],
        n_effective=n,
    )
