"""Time series container, year segmentation, and fluctuation sequences.

A series is a sequence of (fraction date, value) points.  Fraction dates
encode a calendar year plus the fraction of the year completed, in
[0, 0.9999]; they deliberately ignore leap years and month lengths.  A
*segment* is the slice of values falling in one half-open date interval
(one calendar year in the experiments), and its *fluctuation sequence*
is the series of value-to-value percent change magnitudes rounded to
the nearest hundredth.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DivisionByZeroError,
    EmptySegmentError,
    LengthMismatchError,
    MissingYearError,
    ZeroBaselineError,
)
from .rounding import round2_array

DECLINE = "Decline"
RISE = "Rise"


@dataclass(frozen=True, order=True)
class FractionDate:
    """A calendar year plus the fraction of the year completed.

    Orders lexicographically by (year, fraction).  The fraction is the
    percent of the year elapsed, limited to [0, 0.9999] so that a date
    never rolls over into the next year.
    """

    year: int
    fraction: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.fraction <= 0.9999):
            raise ValueError(f"fraction {self.fraction!r} outside [0, 0.9999]")

    def __float__(self):
        return self.year + self.fraction


class TimeSeries:
    """Immutable series of strictly increasing (FractionDate, value) points.

    Values must be finite and nonnegative.  Internally the dates are held
    as parallel int/float arrays so year masks and sums are plain numpy
    operations.
    """

    def __init__(self, dates, values):
        dates = list(dates)
        years = np.array([d.year for d in dates], dtype=np.int64)
        fractions = np.array([d.fraction for d in dates], dtype=np.float64)
        values = np.asarray(values, dtype=np.float64)
        if values.ndim != 1 or len(dates) != values.shape[0]:
            raise ValueError("dates and values must be 1-d and equal length")
        if values.shape[0] == 0:
            raise ValueError("a TimeSeries needs at least one point")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")
        if np.any(values < 0):
            raise ValueError("values must be nonnegative")
        keys = years.astype(np.float64) * 2.0 + fractions  # fraction < 1 < 2
        if np.any(np.diff(keys) <= 0):
            bad = int(np.flatnonzero(np.diff(keys) <= 0)[0]) + 1
            raise ValueError(f"dates must be strictly increasing (point {bad})")
        self._years = years
        self._fractions = fractions
        self._values = values

    def __len__(self):
        return self._values.shape[0]

    @property
    def values(self):
        return self._values

    @property
    def years(self):
        return self._years

    @property
    def fractions(self):
        return self._fractions

    def dates(self):
        return [
            FractionDate(int(y), float(f))
            for y, f in zip(self._years, self._fractions)
        ]

    def distinct_years(self):
        return [int(y) for y in np.unique(self._years)]

    def year_sum(self, year):
        mask = self._years == year
        if not mask.any():
            raise MissingYearError(f"year {year} not present in series")
        return float(self._values[mask].sum())


@dataclass(frozen=True)
class Segment:
    """Values of a series inside one half-open [start, end) date window."""

    label: str
    start: FractionDate
    end: FractionDate
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(
            self, "values", np.asarray(self.values, dtype=np.float64)
        )
        if self.values.size == 0:
            raise EmptySegmentError(f"segment {self.label!r} has no values")
        if not (self.start < self.end):
            raise ValueError("segment start must precede end")

    def __len__(self):
        return int(self.values.shape[0])


@dataclass(frozen=True)
class FluctuationSequence:
    """Nonnegative percent-change magnitudes, rounded to hundredths."""

    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(
            self, "values", np.asarray(self.values, dtype=np.float64)
        )

    def __len__(self):
        return int(self.values.shape[0])


def segment_by_year(series, year):
    """Extract the sub-series for one calendar year.

    The year window is the half-open interval [year.0, (year+1).0), so a
    point exactly on a year boundary belongs to the year it starts.
    Raises EmptySegmentError when the year has no points.
    """
    mask = series.years == year
    if not mask.any():
        raise EmptySegmentError(f"no points in year {year}")
    return Segment(
        label=str(year),
        start=FractionDate(year, 0.0),
        end=FractionDate(year + 1, 0.0),
        values=series.values[mask].copy(),
    )


def classify_year(series, year):
    """Label a year as decline or rise relative to the previous year.

    Returns (label, change_pct) where change_pct is the percent change of
    the year's value total against the previous year's total.  A year
    counts as a decline only for a strict decrease; a flat year is a rise.
    """
    for y in (year - 1, year):
        if not (series.years == y).any():
            raise MissingYearError(f"year {y} not present in series")
    prev_sum = series.year_sum(year - 1)
    cur_sum = series.year_sum(year)
    if prev_sum == 0.0:
        raise ZeroBaselineError(f"year {year - 1} total is zero")
    change_pct = 100.0 * (cur_sum - prev_sum) / prev_sum
    return (DECLINE if change_pct < 0 else RISE), change_pct


def fluctuation_sequence(segment):
    """Percent-change magnitude sequence of a segment.

    Element n is ``round2(100 * |v[n+1] - v[n]| / v[n])``; the result is
    one shorter than the segment.  Any zero value used as a denominator
    is a hard error; the intended data (percent-of-total series) is
    strictly positive.
    """
    v = segment.values
    if v.shape[0] < 2:
        raise EmptySegmentError(
            f"segment {segment.label!r} needs at least 2 values"
        )
    denom = v[:-1]
    if np.any(denom == 0.0):
        pos = int(np.flatnonzero(denom == 0.0)[0])
        raise DivisionByZeroError(
            f"value at position {pos} of segment {segment.label!r} is zero"
        )
    pct = 100.0 * np.abs(np.diff(v)) / denom
    return FluctuationSequence(round2_array(pct))


def align_lengths(a, b, mode="strict"):
    """Force two segments to a common length.

    strict   -- error unless already equal.
    truncate -- cut both to the shorter length, keeping the front.
    """
    if mode not in ("strict", "truncate"):
        raise ValueError(f"unknown alignment mode {mode!r}")
    na, nb = len(a), len(b)
    if na == nb:
        return a, b
    if mode == "strict":
        raise LengthMismatchError(
            f"segments {a.label!r} ({na}) and {b.label!r} ({nb}) differ in length"
        )
    k = min(na, nb)
    cut = lambda s: Segment(s.label, s.start, s.end, s.values[:k].copy())
    return (cut(a) if na > k else a), (cut(b) if nb > k else b)
