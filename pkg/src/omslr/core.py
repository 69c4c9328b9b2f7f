"""Per-segment least-squares statistics over integer time positions.

The regressor is always the position index 1..n; timestamps or other row
labels never enter the fit. Three cumulative-sum arrays built once in O(n)
make every interval query O(1): the moments of the index itself have closed
forms, so only sums of x, m*x and x*x are stored.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TimeSeries:
    """A finite sequence of real observations x_1..x_n (1-indexed)."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError("time series must be one-dimensional")
        if arr.size < 1:
            raise ValueError("time series must contain at least one value")
        if not np.all(np.isfinite(arr)):
            bad = int(np.flatnonzero(~np.isfinite(arr))[0])
            raise ValueError(f"non-finite value at position {bad + 1}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.n


def as_series(data) -> TimeSeries:
    """Coerce a sequence of numbers into a TimeSeries (no-op if already one)."""
    if isinstance(data, TimeSeries):
        return data
    return TimeSeries(np.asarray(data, dtype=np.float64))


@dataclass(frozen=True)
class PrefixStats:
    """Cumulative sums of x, m*x and x*x with a leading zero sentinel.

    Entry j holds the running sum over positions 1..j, accumulated in
    sequence order, so any interval sum is two lookups and a subtraction.
    Immutable once built; safe to share across concurrent readers.
    """

    n: int
    sum_x: np.ndarray
    sum_mx: np.ndarray
    sum_xx: np.ndarray


@dataclass(frozen=True)
class SegmentModel:
    """Least-squares line fitted to positions start..end.

    The fitted value at position m is ``slope * m + intercept``; ``sse`` is
    the sum of squared residuals over the segment, clamped into [0, inf).
    """

    start: int
    end: int
    slope: float
    intercept: float
    sse: float

    @property
    def length(self) -> int:
        return self.end - self.start + 1

    def fitted(self, m):
        """Fitted value(s) at position(s) m."""
        return self.slope * np.asarray(m, dtype=np.float64) + self.intercept


def build_prefix_stats(series) -> PrefixStats:
    """Build the O(n) cumulative sums backing all interval queries."""
    series = as_series(series)
    x = series.values
    m = np.arange(1, series.n + 1, dtype=np.float64)
    zero = np.zeros(1)
    sum_x = np.concatenate([zero, np.cumsum(x)])
    sum_mx = np.concatenate([zero, np.cumsum(m * x)])
    sum_xx = np.concatenate([zero, np.cumsum(x * x)])
    for arr in (sum_x, sum_mx, sum_xx):
        arr.setflags(write=False)
    return PrefixStats(series.n, sum_x, sum_mx, sum_xx)


def _check_interval(stats: PrefixStats, start: int, end: int) -> None:
    if not 1 <= start <= end <= stats.n:
        raise ValueError(
            f"interval [{start}, {end}] out of range for series of length {stats.n}"
        )
    if end - start + 1 < 2:
        raise ValueError(f"interval [{start}, {end}] has fewer than 2 points")


def _interval_sse(stats: PrefixStats, start, end) -> np.ndarray:
    """SSE of the least-squares line on [start, end]; start/end may be arrays.

    Every interval must contain >= 2 points (callers enforce this): the
    position spread sum w*(w*w-1)/12 is then strictly positive.
    """
    s = np.asarray(start, dtype=np.intp)
    e = np.asarray(end, dtype=np.intp)
    sx = stats.sum_x[e] - stats.sum_x[s - 1]
    smx = stats.sum_mx[e] - stats.sum_mx[s - 1]
    sxx = stats.sum_xx[e] - stats.sum_xx[s - 1]
    w = (e - s + 1).astype(np.float64)
    tbar = (s + e) / 2.0
    # Closed forms for consecutive integer positions: sum(m) = w*tbar and
    # sum((m - tbar)^2) = w*(w^2 - 1)/12, so the centered cross term reduces
    # to smx - tbar*sx.
    den = w * (w * w - 1.0) / 12.0
    num = smx - tbar * sx
    syy = sxx - sx * sx / w
    sse = syy - num * num / den
    return np.maximum(sse, 0.0)


def fit_segment(stats: PrefixStats, start: int, end: int) -> SegmentModel:
    """Fit the least-squares line to positions start..end in O(1).

    Requires end - start + 1 >= 2. Slope and intercept come from the
    centered normal equations with tbar = (start + end) / 2; the residual
    sum of squares is clamped to zero if cancellation drives it negative.
    """
    _check_interval(stats, start, end)
    sx = stats.sum_x[end] - stats.sum_x[start - 1]
    smx = stats.sum_mx[end] - stats.sum_mx[start - 1]
    w = float(end - start + 1)
    tbar = (start + end) / 2.0
    den = w * (w * w - 1.0) / 12.0
    num = smx - tbar * sx
    slope = num / den
    intercept = sx / w - slope * tbar
    sse = float(_interval_sse(stats, start, end))
    return SegmentModel(int(start), int(end), float(slope), float(intercept), sse)


def segment_sse(stats: PrefixStats, start: int, end: int) -> float:
    """Residual sum of squares of the best line on [start, end].

    Same value as ``fit_segment(stats, start, end).sse``; this is the
    hot-path cost query used by the segmentation solvers.
    """
    _check_interval(stats, start, end)
    return float(_interval_sse(stats, start, end))


def segment_sse_batch(stats: PrefixStats, starts, ends) -> np.ndarray:
    """Vectorized ``segment_sse`` over broadcastable position arrays."""
    s = np.asarray(starts, dtype=np.intp)
    e = np.asarray(ends, dtype=np.intp)
    if s.size and e.size:
        lo = int(s.min()) if s.ndim else int(s)
        if lo < 1 or int(np.max(e)) > stats.n or np.any(e - s + 1 < 2):
            raise ValueError("batch contains an invalid interval")
    return _interval_sse(stats, s, e)
