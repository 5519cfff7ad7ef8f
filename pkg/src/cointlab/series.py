"""Annual time-series containers and the deterministic transforms they support.

The calendar is hard-coded to annual frequency: a series is a name, a start
year, and one observation per year with no gaps.  All containers are immutable
after construction and every transform returns a new series, so everything in
this module is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import NonPositiveValue, SeriesTooShort, ZeroVariance


def _as_readonly(values: Iterable[float]) -> np.ndarray:
    arr = np.array(list(values), dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """One named annual series with a contiguous year index.

    Observation ``i`` belongs to calendar year ``start_year + i``.  Values are
    stored as a read-only float array; missing or non-finite entries are
    rejected at construction.
    """

    name: str
    start_year: int
    values: np.ndarray

    def __post_init__(self):
        arr = _as_readonly(self.values)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError(f"series {self.name!r} needs a non-empty 1-d value array")
        if not np.all(np.isfinite(arr)):
            raise ValueError(f"series {self.name!r} contains missing or non-finite values")
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.size

    @property
    def end_year(self) -> int:
        return self.start_year + len(self) - 1

    @property
    def years(self) -> np.ndarray:
        return np.arange(self.start_year, self.end_year + 1)

    def value_at(self, year: int) -> float:
        if not self.start_year <= year <= self.end_year:
            raise KeyError(f"year {year} outside [{self.start_year}, {self.end_year}]")
        return float(self.values[year - self.start_year])

    def window(self, first_year: int, last_year: int) -> "TimeSeries":
        """Trim to [first_year, last_year]; both endpoints must be covered."""
        if first_year < self.start_year or last_year > self.end_year or first_year > last_year:
            raise ValueError(
                f"window [{first_year}, {last_year}] not covered by "
                f"[{self.start_year}, {self.end_year}]"
            )
        lo = first_year - self.start_year
        hi = last_year - self.start_year + 1
        return TimeSeries(self.name, first_year, self.values[lo:hi])

    def renamed(self, name: str) -> "TimeSeries":
        return TimeSeries(name, self.start_year, self.values)


@dataclass(frozen=True, eq=False)
class Dataset:
    """A year-aligned collection of uniquely named series.

    Construction intersects the member spans and trims every series to the
    common window, so all members cover exactly ``[first_year, last_year]``.
    """

    series: tuple
    first_year: int
    last_year: int

    def __init__(self, series: Sequence[TimeSeries]):
        members = tuple(series)
        if not members:
            raise ValueError("dataset needs at least one series")
        names = [s.name for s in members]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate series names: {sorted(names)}")
        first = max(s.start_year for s in members)
        last = min(s.end_year for s in members)
        if first > last:
            raise ValueError("series spans do not overlap")
        object.__setattr__(self, "series", tuple(s.window(first, last) for s in members))
        object.__setattr__(self, "first_year", first)
        object.__setattr__(self, "last_year", last)

    def __len__(self) -> int:
        return self.last_year - self.first_year + 1

    @property
    def names(self) -> tuple:
        return tuple(s.name for s in self.series)

    @property
    def years(self) -> np.ndarray:
        return np.arange(self.first_year, self.last_year + 1)

    def get(self, name: str) -> TimeSeries:
        for s in self.series:
            if s.name == name:
                return s
        raise KeyError(f"no series named {name!r}; have {self.names}")

    def matrix(self) -> np.ndarray:
        """T x d value matrix, columns in series order."""
        return np.column_stack([s.values for s in self.series])

    def select(self, names: Sequence[str]) -> "Dataset":
        return Dataset([self.get(n) for n in names])

    def window(self, first_year: int, last_year: int) -> "Dataset":
        return Dataset([s.window(first_year, last_year) for s in self.series])

    def drop_first(self, k: int) -> "Dataset":
        """Drop the first ``k`` years (used for common-sample estimation)."""
        return self.window(self.first_year + k, self.last_year)


# -- transforms ---------------------------------------------------------------

def log_transform(s: TimeSeries) -> TimeSeries:
    """Elementwise natural log; the name gains an ``ln`` prefix.

    Raises
    ------
    NonPositiveValue
        If any observation is <= 0, reporting the offending year.
    """
    bad = np.nonzero(s.values <= 0.0)[0]
    if bad.size:
        i = int(bad[0])
        raise NonPositiveValue(s.name, s.start_year + i, float(s.values[i]))
    return TimeSeries("ln" + s.name, s.start_year, np.log(s.values))


def difference(s: TimeSeries, order: int = 1) -> TimeSeries:
    """Order-``order`` difference; output starts ``order`` years later."""
    if order < 1:
        raise ValueError("difference order must be >= 1")
    if len(s) <= order:
        raise SeriesTooShort(f"need more than {order} observations, have {len(s)}")
    return TimeSeries(s.name, s.start_year + order, np.diff(s.values, n=order))


def lag(s: TimeSeries, k: int = 1) -> TimeSeries:
    """Shift the series forward: output at year t is the input at year t-k."""
    if k < 1:
        raise ValueError("lag must be >= 1")
    if len(s) <= k:
        raise SeriesTooShort(f"need more than {k} observations, have {len(s)}")
    return TimeSeries(s.name, s.start_year + k, s.values[:-k])


def standardize(s: TimeSeries) -> TimeSeries:
    """Center to mean 0 and scale to sample standard deviation 1 (n-1)."""
    sd = float(np.std(s.values, ddof=1)) if len(s) > 1 else 0.0
    if sd <= 0.0:
        raise ZeroVariance(f"series {s.name!r} has zero sample variance")
    return TimeSeries(s.name, s.start_year, (s.values - np.mean(s.values)) / sd)
