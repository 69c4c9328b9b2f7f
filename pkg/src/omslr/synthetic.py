"""Synthetic fixture generators: exact piecewise lines and price-like walks."""

from __future__ import annotations

import numpy as np

from .core import TimeSeries


def piecewise_linear(lengths, slopes, intercepts) -> TimeSeries:
    """Series of exact line pieces evaluated at global positions 1..n.

    Piece p covers the next ``lengths[p]`` positions with values
    ``slopes[p] * m + intercepts[p]``. No noise is added; with dyadic
    slopes and intercepts the values are exact in binary floating point.
    """
    if not len(lengths) == len(slopes) == len(intercepts):
        raise ValueError("lengths, slopes and intercepts must align")
    if any(w < 1 for w in lengths):
        raise ValueError("piece lengths must be positive")
    values = []
    start = 1
    for w, b, a in zip(lengths, slopes, intercepts):
        m = np.arange(start, start + w, dtype=np.float64)
        values.append(b * m + a)
        start += w
    return TimeSeries(np.concatenate(values))


def piece_starts(lengths) -> tuple[int, ...]:
    """Start position of each piece for the given lengths."""
    starts = []
    pos = 1
    for w in lengths:
        starts.append(pos)
        pos += w
    return tuple(starts)


def piecewise_linear_noisy(lengths, slopes, intercepts, noise_sd: float, seed: int) -> TimeSeries:
    """Piecewise-linear series plus i.i.d. gaussian noise."""
    base = piecewise_linear(lengths, slopes, intercepts)
    rng = np.random.default_rng(seed)
    return TimeSeries(base.values + rng.normal(0.0, noise_sd, base.n))


def random_walk(n: int, seed: int, start: float = 100.0, step_sd: float = 1.0) -> TimeSeries:
    """Gaussian random walk, a rough stand-in for price-like data."""
    rng = np.random.default_rng(seed)
    return TimeSeries(start + np.cumsum(rng.normal(0.0, step_sd, n)))
