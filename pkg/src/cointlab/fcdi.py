"""Foreign-capital index construction: first principal component of the
standardized log inflow series.

PCA runs on the correlation matrix (standardized columns), never on raw
dollar levels: the inputs live on wildly different scales and the index must
be invariant to currency units.  The loading sign is fixed so the loadings
sum positive, i.e. more inflow pushes the index up.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TooFewColumns, ZeroVariance
from .series import Dataset, TimeSeries, log_transform, standardize


@dataclass(frozen=True)
class PcaResult:
    """Leading principal component of a correlation matrix.

    ``loadings`` has unit Euclidean norm; ``scores`` is the projection of the
    standardized data on the loadings, so its sample variance equals the
    leading eigenvalue.
    """

    loadings: np.ndarray
    explained_variance_ratio: float
    scores: TimeSeries
    eigenvalues: np.ndarray


def pca_first_component(
    X: np.ndarray, start_year: int = 0, name: str = "pc1"
) -> PcaResult:
    """First principal component of the columns of ``X`` (correlation PCA).

    Columns are standardized (n-1 denominator), the correlation matrix is
    eigendecomposed, and the loading sign is chosen so the loadings sum
    positive.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] < 2:
        raise TooFewColumns("need a 2-d array with at least two columns")
    if not np.all(np.isfinite(X)):
        raise ValueError("input contains missing values")
    T = X.shape[0]
    sd = X.std(axis=0, ddof=1)
    if np.any(sd <= 0.0):
        bad = int(np.nonzero(sd <= 0.0)[0][0])
        raise ZeroVariance(f"column {bad} has zero sample variance")
    Z = (X - X.mean(axis=0)) / sd
    corr = Z.T @ Z / (T - 1)
    vals, vecs = np.linalg.eigh(corr)
    order = np.argsort(vals)[::-1]
    vals = vals[order]
    loadings = vecs[:, order[0]]
    if loadings.sum() < 0:
        loadings = -loadings
    scores = Z @ loadings
    return PcaResult(
        loadings=loadings,
        explained_variance_ratio=float(vals[0] / vals.sum()),
        scores=TimeSeries(name, start_year, scores),
        eigenvalues=vals,
    )


def build_fcdi(fdi: TimeSeries, rem: TimeSeries, aid: TimeSeries) -> PcaResult:
    """Foreign-capital depthness index from the three raw inflow series.

    Aligns the spans, takes logs, standardizes, and projects on the first
    principal component; the score series is named ``fcdi``.
    """
    aligned = Dataset([fdi, rem, aid])
    prepared = [standardize(log_transform(s)) for s in aligned.series]
    X = np.column_stack([s.values for s in prepared])
    return pca_first_component(X, start_year=aligned.first_year, name="fcdi")
