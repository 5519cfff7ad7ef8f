from pathlib import Path

import numpy as np
import pytest

from cointlab import Dataset, TimeSeries, log_transform
from cointlab.cv_tables import replication_rng
from cointlab.pipeline import LOG_NAMES, ROLES, ingest_wdi_csv

DATA_DIR = Path(__file__).resolve().parents[1] / "data"
CONFIG_PATH = Path(__file__).resolve().parents[1] / "configs" / "bgd_foreign_capital.json"
SNAPSHOT = DATA_DIR / "wdi_bgd_1976_2021.csv"


@pytest.fixture(scope="session")
def snapshot_raw() -> Dataset:
    variable_map = {role: role for role in ROLES}
    return ingest_wdi_csv(str(SNAPSHOT), variable_map, (1976, 2021))


@pytest.fixture(scope="session")
def snapshot_logs(snapshot_raw) -> Dataset:
    return Dataset(
        [log_transform(snapshot_raw.get(role)).renamed(LOG_NAMES[role]) for role in ROLES]
    )


@pytest.fixture(scope="session")
def four_var(snapshot_logs) -> Dataset:
    return snapshot_logs.select(["lngdp", "lnfdi", "lnrem", "lnaid"])


def series(values, name="x", start_year=2000) -> TimeSeries:
    return TimeSeries(name, start_year, np.asarray(values, dtype=float))


def random_walk(seed: int, T: int, drift: float = 0.0) -> np.ndarray:
    rng = replication_rng(seed, 0)
    return np.cumsum(rng.standard_normal(T) + drift)


def ar1(rng: np.random.Generator, T: int, phi: float, sigma: float = 1.0) -> np.ndarray:
    x = np.zeros(T)
    eps = rng.standard_normal(T) * sigma
    for t in range(1, T):
        x[t] = phi * x[t - 1] + eps[t]
    return x


def cointegrated_pair(rng: np.random.Generator, T: int, slope: float = 1.0,
                      drift: float = 0.5, phi: float = 0.5):
    """Drifting common trend plus a stationary disequilibrium."""
    trend = np.cumsum(rng.standard_normal(T) + drift)
    dev = ar1(rng, T, phi)
    return slope * trend + dev, trend


def drifting_walks(rng: np.random.Generator, T: int, d: int, drift: float = 0.5) -> np.ndarray:
    return np.cumsum(rng.standard_normal((T, d)) + drift, axis=0)
