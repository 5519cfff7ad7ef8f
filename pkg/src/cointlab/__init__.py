"""cointlab: cointegration toolkit and reporting pipeline for annual macro
time series.

Core layers, bottom up:

- ``series``: immutable annual series/dataset containers and transforms.
- ``linstats``: least squares, HAC long-run variance, generalized
  eigenproblems, tail probabilities.
- ``cv_tables``: bundled and simulated critical values for the nonstandard
  test distributions.
- ``unitroot``, ``varselect``, ``johansen``, ``fcdi``, ``diagnostics``: the
  estimation and testing operations.
- ``pipeline`` / ``report`` / ``plots`` / ``cli``: data ingestion,
  orchestration, and rendering.
"""

__version__ = "0.1.0"

from .series import Dataset, TimeSeries, difference, lag, log_transform, standardize
from .linstats import (
    EigenPair,
    OlsResult,
    auto_bandwidth,
    generalized_eigen,
    newey_west_lrv,
    ols_fit,
    tail_probability,
)
from .unitroot import UnitRootResult, adf_test, classify_integration, pp_test
from .varselect import LagSelectionTable, VarModel, select_lag, var_fit
from .johansen import (
    JohansenResult,
    VecmModel,
    WaldResult,
    ect_series,
    johansen_test,
    vecm_fit,
    wald_block_exogeneity,
)
from .fcdi import PcaResult, build_fcdi, pca_first_component
from .diagnostics import DiagnosticResult, jarque_bera, lm_autocorrelation

__all__ = [
    "Dataset",
    "TimeSeries",
    "difference",
    "lag",
    "log_transform",
    "standardize",
    "EigenPair",
    "OlsResult",
    "auto_bandwidth",
    "generalized_eigen",
    "newey_west_lrv",
    "ols_fit",
    "tail_probability",
    "UnitRootResult",
    "adf_test",
    "classify_integration",
    "pp_test",
    "LagSelectionTable",
    "VarModel",
    "select_lag",
    "var_fit",
    "JohansenResult",
    "VecmModel",
    "WaldResult",
    "ect_series",
    "johansen_test",
    "vecm_fit",
    "wald_block_exogeneity",
    "PcaResult",
    "build_fcdi",
    "pca_first_component",
    "DiagnosticResult",
    "jarque_bera",
    "lm_autocorrelation",
    "__version__",
]
