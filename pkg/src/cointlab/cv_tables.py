"""Critical values for the nonstandard unit-root and cointegration-rank
distributions, plus the seeded Monte Carlo machinery that regenerates them.

The bundled numbers live in ``tables/critical_values.txt`` (a versioned
plain-text file, format documented in its header).  Dickey-Fuller values are
interpolated linearly in 1/T between sample-size buckets; the cointegration
rank tables are indexed by the remaining system dimension d - r.

All simulations derive one RNG stream per replication from
``(seed, replication index)``, so a table regenerated in parallel chunks is
bit-identical to a serial run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from typing import Dict, Tuple

import numpy as np

from .errors import UnsupportedCombination

LEVELS = (0.01, 0.05, 0.10)

_DF_BUCKETS = (25, 50, 100, 250, 500, math.inf)


@dataclass(frozen=True)
class CriticalValueTable:
    """Quantiles for one (family, det_spec, index) cell.

    ``provenance`` is ``"bundled"`` for shipped numbers or
    ``"simulated:<seed>:<reps>:<T>"`` for freshly generated ones.
    """

    family: str
    det_spec: str
    index: float
    levels: Dict[float, float]
    provenance: str


def _parse_index(family: str, raw: str) -> float:
    if raw == "inf":
        return math.inf
    return float(raw)


def _load_bundled() -> Dict[Tuple[str, str, float, float], float]:
    table: Dict[Tuple[str, str, float, float], float] = {}
    text = resources.files("cointlab").joinpath("tables/critical_values.txt").read_text()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        family, det_spec, raw_index, raw_level, raw_value, _prov = line.split()
        key = (family, det_spec, _parse_index(family, raw_index), float(raw_level))
        table[key] = float(raw_value)
    return table


_BUNDLED = _load_bundled()


def lookup(family: str, det_spec: str, index, level: float) -> float:
    """Return the bundled critical value for one test configuration.

    ``index`` is the effective sample size for ``dickey_fuller`` (interpolated
    in 1/T across the bundled buckets) and d - r for the johansen families
    (exact match required).

    Raises
    ------
    UnsupportedCombination
        If the (family, det_spec, index, level) cell is not bundled.
    """
    level = float(level)
    if family == "dickey_fuller":
        return _df_interpolated(det_spec, float(index), level)
    key = (family, det_spec, float(index), level)
    if key not in _BUNDLED:
        raise UnsupportedCombination(
            f"no bundled value for {family}/{det_spec}, index {index}, level {level}"
        )
    return _BUNDLED[key]


def _df_interpolated(det_spec: str, T: float, level: float) -> float:
    def bucket_value(bucket: float) -> float:
        key = ("dickey_fuller", det_spec, bucket, level)
        if key not in _BUNDLED:
            raise UnsupportedCombination(
                f"no bundled dickey_fuller values for {det_spec!r} at level {level}"
            )
        return _BUNDLED[key]

    if T <= _DF_BUCKETS[0]:
        return bucket_value(_DF_BUCKETS[0])
    if T >= _DF_BUCKETS[-2]:
        lo, hi = _DF_BUCKETS[-2], _DF_BUCKETS[-1]
    else:
        lo = max(b for b in _DF_BUCKETS[:-1] if b <= T)
        hi = min(b for b in _DF_BUCKETS if b > T)
    v_lo, v_hi = bucket_value(lo), bucket_value(hi)
    # linear in 1/T; the asymptotic bucket sits at 1/T = 0
    x, x_lo = 1.0 / T, 1.0 / lo
    x_hi = 0.0 if math.isinf(hi) else 1.0 / hi
    w = (x_lo - x) / (x_lo - x_hi)
    return v_lo + w * (v_hi - v_lo)


def df_critical_values(det_spec: str, T: int) -> Dict[float, float]:
    """Interpolated Dickey-Fuller critical values at all three levels."""
    return {lv: lookup("dickey_fuller", det_spec, T, lv) for lv in LEVELS}


def replication_rng(seed: int, rep: int) -> np.random.Generator:
    """Independent, reproducible stream for replication ``rep`` of ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(entropy=(int(seed), int(rep))))


# -- Dickey-Fuller null simulation -------------------------------------------

def _df_tstats_chunk(det_spec: str, T: int, seed: int, start: int, count: int) -> np.ndarray:
    """t-ratios on the lagged level for ``count`` simulated driftless walks."""
    y = np.empty((count, T))
    for i in range(count):
        rng = replication_rng(seed, start + i)
        y[i] = np.cumsum(rng.standard_normal(T))
    x = y[:, :-1]
    dy = np.diff(y, axis=1)
    n = T - 1
    if det_spec == "constant":
        k = 2
        xd = x - x.mean(axis=1, keepdims=True)
        yd = dy - dy.mean(axis=1, keepdims=True)
    elif det_spec == "constant_trend":
        k = 3
        # project out [1, t] (fixed design, shared across replications)
        trend = np.arange(n, dtype=float)
        D = np.column_stack([np.ones(n), trend])
        proj = D @ np.linalg.inv(D.T @ D) @ D.T
        xd = x - x @ proj.T
        yd = dy - dy @ proj.T
    else:
        raise UnsupportedCombination(f"unknown dickey_fuller det_spec {det_spec!r}")
    sxx = np.einsum("ij,ij->i", xd, xd)
    sxy = np.einsum("ij,ij->i", xd, yd)
    syy = np.einsum("ij,ij->i", yd, yd)
    rho = sxy / sxx
    rss = syy - rho * sxy
    s2 = rss / (n - k)
    return rho / np.sqrt(s2 / sxx)


def simulate_df_quantiles(
    det_spec: str, T: int, reps: int, seed: int, chunk: int = 5000
) -> CriticalValueTable:
    """Empirical 1/5/10% quantiles of the Dickey-Fuller t-ratio under the null.

    Simulates ``reps`` driftless random walks of length ``T`` and computes the
    t-ratio on the lagged level under ``det_spec``.  Deterministic given
    ``seed`` regardless of chunking.
    """
    if reps < 10000:
        raise ValueError("reps must be >= 10000 for stable tail quantiles")
    stats = np.empty(reps)
    done = 0
    while done < reps:
        take = min(chunk, reps - done)
        stats[done : done + take] = _df_tstats_chunk(det_spec, T, seed, done, take)
        done += take
    levels = {lv: float(np.quantile(stats, lv)) for lv in LEVELS}
    return CriticalValueTable(
        family="dickey_fuller",
        det_spec=det_spec,
        index=float(T),
        levels=levels,
        provenance=f"simulated:{seed}:{reps}:{T}",
    )


# -- Johansen null simulation --------------------------------------------------

def _johansen_stats_chunk(
    stat: str, d: int, det_spec: str, T: int, seed: int, start: int, count: int
) -> np.ndarray:
    """Rank-0 trace or max-eigenvalue statistics for independent random walks.

    Under the unrestricted-constant case the walks carry unit drift: that
    case's asymptotics presume a trending process (the constant passes a
    linear trend through to the levels), and its published quantiles are
    computed under that assumption.  The other cases use driftless walks.
    """
    drift = 1.0 if det_spec == "unrestricted_constant" else 0.0
    y = np.empty((count, T, d))
    for i in range(count):
        rng = replication_rng(seed, start + i)
        y[i] = np.cumsum(rng.standard_normal((T, d)) + drift, axis=0)
    dy = np.diff(y, axis=1)  # (count, T-1, d)
    lvl = y[:, :-1, :]
    n = T - 1
    if det_spec == "unrestricted_constant":
        r0 = dy - dy.mean(axis=1, keepdims=True)
        r1 = lvl - lvl.mean(axis=1, keepdims=True)
    elif det_spec == "none":
        r0 = dy
        r1 = lvl
    elif det_spec == "restricted_constant":
        r0 = dy
        r1 = np.concatenate([lvl, np.ones((count, n, 1))], axis=2)
    else:
        raise UnsupportedCombination(f"unknown johansen det_spec {det_spec!r}")
    s00 = np.einsum("bti,btj->bij", r0, r0) / n
    s01 = np.einsum("bti,btj->bij", r0, r1) / n
    s11 = np.einsum("bti,btj->bij", r1, r1) / n
    m = np.linalg.solve(s11, np.swapaxes(s01, 1, 2)) @ np.linalg.solve(s00, s01)
    lam = np.sort(np.real(np.linalg.eigvals(m)), axis=1)[:, ::-1]
    lam = np.clip(lam[:, :d], 0.0, 1.0 - 1e-12)
    if stat == "trace":
        return -n * np.sum(np.log1p(-lam), axis=1)
    if stat == "max_eigen":
        return -n * np.log1p(-lam[:, 0])
    raise ValueError(f"unknown statistic {stat!r}")


def simulate_johansen_quantiles(
    stat: str,
    d_minus_r: int,
    det_spec: str,
    T: int = 1000,
    reps: int = 10000,
    seed: int = 0,
    chunk: int = 2000,
) -> CriticalValueTable:
    """Empirical null quantiles of the rank-0 cointegration statistics.

    Simulates ``d_minus_r`` independent driftless random walks, applies the
    reduced-rank eigenvalue problem under ``det_spec``, and records the
    requested statistic.  Upper-tail quantiles are returned (1 - level), so
    ``levels[0.05]`` is the 95th percentile.
    """
    if reps < 10000:
        raise ValueError("reps must be >= 10000 for stable tail quantiles")
    if not 1 <= d_minus_r <= 6:
        raise ValueError("d_minus_r must be in 1..6")
    stats = np.empty(reps)
    done = 0
    while done < reps:
        take = min(chunk, reps - done)
        stats[done : done + take] = _johansen_stats_chunk(
            stat, d_minus_r, det_spec, T, seed, done, take
        )
        done += take
    levels = {lv: float(np.quantile(stats, 1.0 - lv)) for lv in LEVELS}
    family = "johansen_trace" if stat == "trace" else "johansen_max_eigen"
    return CriticalValueTable(
        family=family,
        det_spec=det_spec,
        index=float(d_minus_r),
        levels=levels,
        provenance=f"simulated:{seed}:{reps}:{T}",
    )


def format_table(tables) -> str:
    """Render tables in the versioned fixed-width file format."""
    lines = ["# cointlab critical-value tables, format version 1"]
    for t in tables:
        idx = "inf" if math.isinf(t.index) else f"{int(t.index)}"
        for lv in sorted(t.levels):
            lines.append(
                f"{t.family:<19} {t.det_spec:<21} {idx:>4}  {lv:5.2f}  "
                f"{t.levels[lv]:8.3f}  {t.provenance}"
            )
    return "\n".join(lines) + "\n"
