"""Two-level dynamic program for globally optimal multi-segment regression.

The table is indexed by (level i, prefix end j): level 1 holds the plain
single-segment fit of every prefix, and level i >= 2 is built by scanning
candidate start positions for the last segment against level i-1. Filling
level k therefore prices the optimal i-segment partition of every prefix
for all i <= k at once; any cell can then be backtracked without
re-solving. Total work is O(k n^2) cost evaluations.

Each level reads only the level below it plus the prefix statistics, so
cells within one level are independent; the implementation computes them
sequentially per level with vectorized candidate scans. Tables are
immutable once built and backtracking is read-only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    PrefixStats,
    SegmentModel,
    _interval_sse,
    as_series,
    build_prefix_stats,
    fit_segment,
)


class InfeasibleError(ValueError):
    """The series is too short for the requested segment count and size."""


@dataclass(frozen=True)
class SolverConfig:
    """Number of segments ``k`` and minimum segment length ``min_seg``."""

    k: int
    min_seg: int = 2

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.min_seg < 2:
            raise ValueError(f"min_seg must be >= 2, got {self.min_seg}")


@dataclass(frozen=True)
class Partition:
    """A tiling of positions 1..n into contiguous fitted segments.

    ``pivots`` are the segment start positions (the first is always 1);
    ``gmse`` is the partition's total sum of squared residuals, i.e. the
    left-to-right sum of the segments' sse values.
    """

    pivots: tuple[int, ...]
    n: int
    segments: tuple[SegmentModel, ...]
    gmse: float

    @property
    def k(self) -> int:
        return len(self.pivots)


@dataclass(frozen=True)
class DPTable:
    """Filled solver table for levels 1..k over prefixes 1..n.

    Arrays are (k+1, n+1) with row 0 / column 0 unused so indices match the
    1-based math. ``cost[i, j]`` is the optimal i-segment total SSE of the
    length-j prefix and ``last_start[i, j]`` the start of its last segment;
    both are meaningful only where ``feasible[i, j]`` is True (j >= i*min_seg).
    """

    k: int
    n: int
    min_seg: int
    cost: np.ndarray
    last_start: np.ndarray
    feasible: np.ndarray
    n_cost_evals: int
    stats: PrefixStats


def partition_from_pivots(stats: PrefixStats, pivots, end: int) -> Partition:
    """Fit one segment per pivot and assemble the Partition for [1, end]."""
    pivots = tuple(int(p) for p in pivots)
    if not pivots or pivots[0] != 1:
        raise ValueError("pivots must start at position 1")
    segments = []
    for q, start in enumerate(pivots):
        seg_end = pivots[q + 1] - 1 if q + 1 < len(pivots) else end
        segments.append(fit_segment(stats, start, seg_end))
    gmse = 0.0
    for seg in segments:
        gmse += seg.sse
    return Partition(pivots, int(end), tuple(segments), gmse)


def solve(series, config: SolverConfig) -> tuple[DPTable, Partition]:
    """Compute the optimal k-segment partition and the full solver table.

    Parameters
    ----------
    series : TimeSeries or sequence of float
        Observations x_1..x_n; requires n >= k * min_seg.
    config : SolverConfig
        Segment count k and minimum segment length.

    Returns
    -------
    (DPTable, Partition)
        The filled table for levels 1..k over all prefixes, and the
        backtracked optimal k-partition of the whole series. Ties in the
        candidate scan are broken toward the smallest start position.
    """
    series = as_series(series)
    k, d = config.k, config.min_seg
    n = series.n
    if n < k * d:
        raise InfeasibleError(
            f"need n >= k*min_seg ({k}*{d}={k * d}), got n={n}"
        )
    stats = build_prefix_stats(series)

    cost = np.full((k + 1, n + 1), np.nan)
    last_start = np.zeros((k + 1, n + 1), dtype=np.int64)
    feasible = np.zeros((k + 1, n + 1), dtype=bool)
    n_evals = 0

    # Level 1: direct single-segment fit of every prefix of length >= d.
    j_all = np.arange(d, n + 1)
    cost[1, d:] = _interval_sse(stats, 1, j_all)
    last_start[1, d:] = 1
    feasible[1, d:] = True
    n_evals += j_all.size

    for i in range(2, k + 1):
        s_lo = (i - 1) * d + 1
        prev = cost[i - 1]
        for j in range(i * d, n + 1):
            s_hi = j - d + 1  # >= s_lo because j >= i*d
            cand_starts = np.arange(s_lo, s_hi + 1)
            cand_cost = prev[s_lo - 1 : s_hi] + _interval_sse(stats, cand_starts, j)
            t = int(np.argmin(cand_cost))  # first minimum: smallest start wins
            cost[i, j] = cand_cost[t]
            last_start[i, j] = s_lo + t
            feasible[i, j] = True
            n_evals += cand_cost.size

    for arr in (cost, last_start, feasible):
        arr.setflags(write=False)
    table = DPTable(k, n, d, cost, last_start, feasible, n_evals, stats)
    return table, backtrack(table, k, n)


def backtrack(table: DPTable, level: int, end: int) -> Partition:
    """Recover the optimal ``level``-segment partition of the length-``end`` prefix.

    Walks the stored last-segment starts down one level at a time; O(level)
    lookups, no cost re-evaluation. Raises for cells the solve marked
    infeasible.
    """
    if not 1 <= level <= table.k or not 1 <= end <= table.n or not table.feasible[level, end]:
        raise ValueError(
            f"no feasible {level}-segment partition of prefix of length {end}"
        )
    pivots = []
    lev, cur = level, end
    while lev >= 1:
        start = int(table.last_start[lev, cur])
        pivots.append(start)
        cur = start - 1
        lev -= 1
    pivots.reverse()
    return partition_from_pivots(table.stats, pivots, end)


def partitions_all_levels(table: DPTable) -> list[Partition]:
    """Optimal i-segment partition of the full series for every i = 1..k.

    All partitions come from one filled table; nothing is re-solved. The
    returned gmse values are non-increasing in i for the default minimum
    segment length of 2.
    """
    return [backtrack(table, i, table.n) for i in range(1, table.k + 1)]


def cost_evaluation_count(table: DPTable) -> int:
    """Exact number of candidate costs evaluated while filling the table.

    Counts one per level-1 prefix fit plus one per (last-segment start,
    prefix) candidate at levels >= 2; bounded by k * n^2.
    """
    return int(table.n_cost_evals)
