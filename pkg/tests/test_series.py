import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cointlab import Dataset, TimeSeries, difference, lag, log_transform, standardize
from cointlab.errors import NonPositiveValue, SeriesTooShort, ZeroVariance

from conftest import series


class TestTimeSeries:
    def test_year_indexing(self):
        s = series([1.0, 2.0, 3.0], start_year=1976)
        assert s.end_year == 1978
        assert s.value_at(1977) == 2.0
        assert list(s.years) == [1976, 1977, 1978]

    def test_rejects_empty_and_nonfinite(self):
        with pytest.raises(ValueError):
            TimeSeries("x", 2000, np.array([]))
        with pytest.raises(ValueError):
            TimeSeries("x", 2000, np.array([1.0, np.nan]))
        with pytest.raises(ValueError):
            TimeSeries("x", 2000, np.array([1.0, np.inf]))

    def test_values_are_immutable(self):
        s = series([1.0, 2.0])
        with pytest.raises(ValueError):
            s.values[0] = 5.0

    def test_window(self):
        s = series([1.0, 2.0, 3.0, 4.0], start_year=2000)
        w = s.window(2001, 2002)
        assert w.start_year == 2001
        assert list(w.values) == [2.0, 3.0]
        with pytest.raises(ValueError):
            s.window(1999, 2002)


class TestDataset:
    def test_aligns_by_intersecting_spans(self):
        a = series([1.0, 2.0, 3.0, 4.0], name="a", start_year=2000)
        b = series([5.0, 6.0, 7.0], name="b", start_year=2001)
        ds = Dataset([a, b])
        assert (ds.first_year, ds.last_year) == (2001, 2003)
        assert ds.matrix().shape == (3, 2)
        assert list(ds.get("a").values) == [2.0, 3.0, 4.0]

    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            Dataset([series([1.0], name="a"), series([2.0], name="a")])

    def test_disjoint_spans_rejected(self):
        a = series([1.0, 2.0], name="a", start_year=2000)
        b = series([1.0, 2.0], name="b", start_year=2010)
        with pytest.raises(ValueError, match="overlap"):
            Dataset([a, b])


class TestLogTransform:
    def test_constant_ones_go_to_zero(self):
        out = log_transform(series([1.0, 1.0, 1.0]))
        assert np.all(out.values == 0.0)

    def test_single_value(self):
        # 5.42 million in plain dollars
        out = log_transform(series([5.42e6], name="fdi"))
        assert out.values[0] == pytest.approx(math.log(5.42e6), abs=1e-12)
        assert out.values[0] == pytest.approx(15.5056, abs=5e-4)
        assert out.name == "lnfdi"

    def test_zero_rejected_with_year(self):
        s = series([1.0, 0.0, 2.0], name="aid", start_year=1990)
        with pytest.raises(NonPositiveValue) as err:
            log_transform(s)
        assert err.value.year == 1991


class TestDifference:
    def test_constant_series(self):
        out = difference(series([3.0, 3.0, 3.0, 3.0]))
        assert np.all(out.values == 0.0)
        assert len(out) == 3

    def test_first_and_second_order(self):
        s = series([1.0, 3.0, 6.0, 10.0], start_year=2000)
        d1 = difference(s, 1)
        assert list(d1.values) == [2.0, 3.0, 4.0]
        assert d1.start_year == 2001
        d2 = difference(s, 2)
        assert list(d2.values) == [1.0, 1.0]
        assert d2.start_year == 2002

    def test_too_short(self):
        with pytest.raises(SeriesTooShort):
            difference(series([1.0, 2.0]), 2)


class TestLag:
    def test_basic(self):
        s = series([5.0, 7.0, 9.0], start_year=1)
        out = lag(s, 1)
        assert list(out.values) == [5.0, 7.0]
        assert out.start_year == 2

    def test_lag_zero_rejected(self):
        with pytest.raises(ValueError):
            lag(series([1.0, 2.0]), 0)

    def test_lag_two(self):
        out = lag(series([1.0, 2.0, 3.0, 4.0], start_year=1), 2)
        assert list(out.values) == [1.0, 2.0]
        assert (out.start_year, out.end_year) == (3, 4)

    def test_too_short(self):
        with pytest.raises(SeriesTooShort):
            lag(series([1.0, 2.0]), 2)


class TestStandardize:
    def test_already_standard(self):
        out = standardize(series([-1.0, 0.0, 1.0]))
        assert np.allclose(out.values, [-1.0, 0.0, 1.0], atol=1e-12)

    def test_hand_example(self):
        # sd of (10, 20, 30) is 10 with the n-1 denominator
        out = standardize(series([10.0, 20.0, 30.0]))
        assert np.allclose(out.values, [-1.0, 0.0, 1.0], atol=1e-12)

    def test_constant_rejected(self):
        with pytest.raises(ZeroVariance):
            standardize(series([2.0, 2.0, 2.0]))


positive_series = st.lists(
    st.floats(min_value=0.1, max_value=1e6, allow_nan=False), min_size=3, max_size=40
)


class TestInvariants:
    @given(positive_series)
    @settings(max_examples=60, deadline=None)
    def test_diff_of_log_is_log_growth(self, vals):
        s = series(vals)
        out = difference(log_transform(s), 1)
        arr = np.asarray(vals)
        expected = np.log(arr[1:] / arr[:-1])
        assert np.allclose(out.values, expected, atol=1e-12)

    @given(positive_series.filter(lambda v: len(v) >= 5))
    @settings(max_examples=60, deadline=None)
    def test_lag_and_difference_commute(self, vals):
        s = series(vals)
        a = difference(lag(s, 1), 1)
        b = lag(difference(s, 1), 1)
        assert a.start_year == b.start_year
        assert np.allclose(a.values, b.values, atol=1e-12)

    @given(positive_series.filter(lambda v: np.std(v) > 1e-6))
    @settings(max_examples=60, deadline=None)
    def test_standardize_idempotent(self, vals):
        once = standardize(series(vals))
        twice = standardize(once)
        assert np.allclose(once.values, twice.values, atol=1e-12)
        assert abs(np.mean(once.values)) < 1e-12
        assert np.std(once.values, ddof=1) == pytest.approx(1.0, abs=1e-12)
