"""Greedy bottom-up segmentation and an exhaustive small-instance optimum.

The greedy pass seeds minimum-length segments and repeatedly merges the
cheapest adjacent pair; it is the standard comparison baseline and is
generally suboptimal. The exhaustive search enumerates every valid pivot
placement and exists to certify optimality claims on small inputs, so it is
kept deliberately simple: no pruning beyond the minimum-length constraint.
"""

from __future__ import annotations

import heapq
from typing import NamedTuple

from .core import as_series, build_prefix_stats, segment_sse
from .solver import InfeasibleError, Partition, SolverConfig, partition_from_pivots


class MergeCandidate(NamedTuple):
    """Adjacent pair in the merge heap; tuple order breaks cost ties leftmost."""

    cost: float  # sse(merged) - sse(left) - sse(right), >= 0 up to rounding
    left_start: int
    right_start: int


def bottom_up(series, config: SolverConfig) -> Partition:
    """Greedy bottom-up k-segmentation.

    Starts from contiguous segments of length ``min_seg`` (the last absorbs
    any remainder) and merges the adjacent pair with the smallest SSE
    increase, leftmost on ties, until exactly k segments remain.
    """
    series = as_series(series)
    k, d = config.k, config.min_seg
    n = series.n
    if n < k * d:
        raise InfeasibleError(
            f"need n >= k*min_seg ({k}*{d}={k * d}), got n={n}"
        )
    stats = build_prefix_stats(series)

    n_segs = n // d
    starts = [q * d + 1 for q in range(n_segs)]
    end_of = {}
    next_of = {}
    prev_of = {}
    sse_of = {}
    for q, s in enumerate(starts):
        e = starts[q + 1] - 1 if q + 1 < n_segs else n
        end_of[s] = e
        next_of[s] = starts[q + 1] if q + 1 < n_segs else None
        prev_of[s] = starts[q - 1] if q > 0 else None
        sse_of[s] = segment_sse(stats, s, e)

    def pair_candidate(left: int, right: int) -> MergeCandidate:
        merged = segment_sse(stats, left, end_of[right])
        return MergeCandidate(merged - sse_of[left] - sse_of[right], left, right)

    heap = [pair_candidate(s, next_of[s]) for s in starts if next_of[s] is not None]
    heapq.heapify(heap)

    remaining = n_segs
    while remaining > k:
        cand = heapq.heappop(heap)
        left, right = cand.left_start, cand.right_start
        # Stale entry: one side was already merged away.
        if left not in end_of or next_of.get(left) != right:
            continue
        end_of[left] = end_of[right]
        sse_of[left] = segment_sse(stats, left, end_of[left])
        after = next_of[right]
        next_of[left] = after
        if after is not None:
            prev_of[after] = left
        del end_of[right], next_of[right], prev_of[right], sse_of[right]
        remaining -= 1
        if prev_of[left] is not None:
            heapq.heappush(heap, pair_candidate(prev_of[left], left))
        if next_of[left] is not None:
            heapq.heappush(heap, pair_candidate(left, next_of[left]))

    pivots = []
    s = starts[0]
    while s is not None:
        pivots.append(s)
        s = next_of[s]
    return partition_from_pivots(stats, pivots, n)


def _placements(n: int, k: int, d: int, start: int = 1):
    """Yield pivot tuples for all k-segmentations of [start, n], lengths >= d.

    Enumeration is lexicographic in the pivot tuple, so the first minimum
    found below is the leftmost-lexicographic one.
    """
    if k == 1:
        if n - start + 1 >= d:
            yield (start,)
        return
    # Leave at least (k-1)*d positions for the remaining segments.
    for end in range(start + d - 1, n - (k - 1) * d + 1):
        for rest in _placements(n, k - 1, d, end + 1):
            yield (start,) + rest


def brute_force_optimum(series, config: SolverConfig, max_n: int = 20) -> Partition:
    """Exhaustively enumerate all valid pivot placements and return the best.

    Ground-truth oracle for small instances; guarded at ``max_n`` points
    because the enumeration is exponential in k. Ties go to the
    lexicographically smallest pivot tuple.
    """
    series = as_series(series)
    k, d = config.k, config.min_seg
    n = series.n
    if n > max_n:
        raise ValueError(f"exhaustive search guarded at n <= {max_n}, got n={n}")
    if n < k * d:
        raise InfeasibleError(
            f"need n >= k*min_seg ({k}*{d}={k * d}), got n={n}"
        )
    stats = build_prefix_stats(series)

    interval_sse = {}
    for i in range(1, n - d + 2):
        for j in range(i + d - 1, n + 1):
            interval_sse[(i, j)] = segment_sse(stats, i, j)

    best_cost = None
    best_pivots = None
    for pivots in _placements(n, k, d):
        total = 0.0
        for q, s in enumerate(pivots):
            e = pivots[q + 1] - 1 if q + 1 < k else n
            total += interval_sse[(s, e)]
        if best_cost is None or total < best_cost:
            best_cost = total
            best_pivots = pivots
    return partition_from_pivots(stats, best_pivots, n)
