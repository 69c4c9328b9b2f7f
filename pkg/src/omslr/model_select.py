"""GMSE-versus-k sweeps and minimal-k search under an error bound."""

from __future__ import annotations

from dataclasses import dataclass

from .baselines import bottom_up
from .core import as_series
from .solver import SolverConfig, partitions_all_levels, solve


@dataclass(frozen=True)
class SweepResult:
    """GMSE per segment count for k = 1..k_max.

    ``solver_gmse`` comes from one solver table (every level backtracked,
    nothing re-solved); ``baseline_gmse`` is present only when the bottom-up
    curve was requested and is computed by independent runs per k.
    """

    k_max: int
    min_seg: int
    ks: tuple[int, ...]
    solver_gmse: tuple[float, ...]
    solver_pivots: tuple[tuple[int, ...], ...]
    baseline_gmse: tuple[float, ...] | None = None


def sweep(series, k_max: int, min_seg: int = 2, include_baseline: bool = False) -> SweepResult:
    """Optimal GMSE for every k = 1..k_max from a single solver run.

    Requires n >= k_max * min_seg. With ``include_baseline`` the greedy
    bottom-up segmenter is run once per k for the comparison curve.
    """
    series = as_series(series)
    table, _ = solve(series, SolverConfig(k_max, min_seg))
    parts = partitions_all_levels(table)
    baseline = None
    if include_baseline:
        baseline = tuple(
            bottom_up(series, SolverConfig(k, min_seg)).gmse for k in range(1, k_max + 1)
        )
    return SweepResult(
        k_max=k_max,
        min_seg=min_seg,
        ks=tuple(range(1, k_max + 1)),
        solver_gmse=tuple(p.gmse for p in parts),
        solver_pivots=tuple(p.pivots for p in parts),
        baseline_gmse=baseline,
    )


def first_k_within(gmse_by_k, bound: float) -> int | None:
    """Smallest k whose GMSE is <= bound in a 1-indexed-by-k sequence."""
    for idx, g in enumerate(gmse_by_k):
        if g <= bound:
            return idx + 1
    return None


def min_k_for_bound(series, bound: float, k_max: int, min_seg: int = 2) -> int | None:
    """Smallest k in [1, k_max] achieving GMSE <= bound, or None.

    One solver run yields the whole GMSE-vs-k sequence, so the search is a
    linear scan; no repeated solving.
    """
    result = sweep(series, k_max, min_seg, include_baseline=False)
    return first_k_within(result.solver_gmse, bound)
