"""Globally optimal k-segment piecewise linear regression of time series.

A two-level dynamic program prices the optimal i-segment partition of every
prefix for all i <= k in O(k n^2); one solved table yields the partition
for every segment count via backtracking alone. Includes the greedy
bottom-up baseline, an exhaustive small-instance oracle, GMSE-vs-k model
selection and a CSV command line front end.
"""

from .baselines import MergeCandidate, bottom_up, brute_force_optimum
from .core import (
    PrefixStats,
    SegmentModel,
    TimeSeries,
    as_series,
    build_prefix_stats,
    fit_segment,
    segment_sse,
    segment_sse_batch,
)
from .io import read_csv
from .model_select import SweepResult, min_k_for_bound, sweep
from .solver import (
    DPTable,
    InfeasibleError,
    Partition,
    SolverConfig,
    backtrack,
    cost_evaluation_count,
    partition_from_pivots,
    partitions_all_levels,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "TimeSeries",
    "PrefixStats",
    "SegmentModel",
    "as_series",
    "build_prefix_stats",
    "fit_segment",
    "segment_sse",
    "segment_sse_batch",
    "SolverConfig",
    "DPTable",
    "Partition",
    "InfeasibleError",
    "solve",
    "backtrack",
    "partitions_all_levels",
    "cost_evaluation_count",
    "partition_from_pivots",
    "bottom_up",
    "brute_force_optimum",
    "MergeCandidate",
    "SweepResult",
    "sweep",
    "min_k_for_bound",
    "read_csv",
    "__version__",
]
