"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines and
timings as they complete.
"""

import subprocess
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest

from omslr import (
    SolverConfig,
    brute_force_optimum,
    build_prefix_stats,
    cost_evaluation_count,
    fit_segment,
    partitions_all_levels,
    segment_sse,
    solve,
)
from omslr.cli import main
from omslr.synthetic import piece_starts, piecewise_linear, random_walk
from oracles import two_pass_sse


@contextmanager
def criterion(num, label):
    started = time.perf_counter()
    try:
        yield
    except Exception:
        print(f"[acceptance] criterion {num} ({label}): FAIL")
        raise
    elapsed = time.perf_counter() - started
    print(f"[acceptance] criterion {num} ({label}): PASS  [{elapsed:.1f}s]")


@pytest.fixture(scope="module")
def sweep_curves():
    """50 seeded price-like series, both GMSE curves to k_max = 40."""
    from omslr.model_select import sweep

    started = time.perf_counter()
    curves = []
    for seed in range(50):
        series = random_walk(200, seed=seed)
        curves.append(sweep(series, 40, include_baseline=True))
    return curves, time.perf_counter() - started


def test_criterion_1_optimal_equals_exhaustive_search():
    with criterion(1, "solver gmse equals brute-force optimum"):
        started = time.perf_counter()
        checked = 0
        for seed in range(500):
            rng = np.random.default_rng(seed)
            n = int(rng.integers(6, 19))
            values = rng.uniform(-10.0, 10.0, n)
            k_top = min(4, n // 2)
            table, _ = solve(values, SolverConfig(k_top))
            parts = partitions_all_levels(table)
            for k in range(1, k_top + 1):
                oracle = brute_force_optimum(values, SolverConfig(k))
                assert abs(parts[k - 1].gmse - oracle.gmse) <= 1e-9
                checked += 1
        assert checked >= 500
        assert time.perf_counter() - started < 30.0


def test_criterion_2_gmse_curve_is_monotone(sweep_curves):
    curves, build_seconds = sweep_curves
    with criterion(2, "solver gmse non-increasing in k"):
        assert build_seconds < 60.0
        for result in curves:
            assert len(result.solver_gmse) == 40
            for a, b in zip(result.solver_gmse, result.solver_gmse[1:]):
                assert b <= a + 1e-12


def test_criterion_3_solver_dominates_bottom_up(sweep_curves):
    curves, _ = sweep_curves
    with criterion(3, "solver dominates bottom-up, strictly somewhere"):
        seeds_with_gap = 0
        for result in curves:
            gap = 0.0
            for opt, greedy in zip(result.solver_gmse, result.baseline_gmse):
                assert opt <= greedy + 1e-9
                gap = max(gap, greedy - opt)
            if gap > 1e-6:
                seeds_with_gap += 1
        assert seeds_with_gap >= 10


def test_criterion_4_exact_recovery_of_linear_pieces():
    with criterion(4, "exact pieces recovered with zero error"):
        started = time.perf_counter()
        lengths = (5, 4, 6, 4, 5)
        slopes = (1.0, -0.5, 1.25, -0.75, 0.5)  # adjacent slopes differ >= 0.5
        for j in (2, 3, 4, 5):
            ls, ss = lengths[:j], slopes[:j]
            # dyadic intercepts with a level jump of 3 at every junction
            intercepts = [2.0]
            for p in range(1, j):
                boundary = sum(ls[:p])
                prev_end = ss[p - 1] * boundary + intercepts[p - 1]
                intercepts.append(prev_end + 3.0 - ss[p] * (boundary + 1))
            series = piecewise_linear(ls, ss, intercepts)
            _, part = solve(series, SolverConfig(j))
            assert part.gmse <= 1e-18
            assert part.pivots == piece_starts(ls)
        assert time.perf_counter() - started < 5.0


def test_criterion_5_quadratic_work_and_desk_scale_runtime(tmp_path):
    with criterion(5, "cost count <= k*n^2, ~4x per doubling, big sweep < 60s"):
        for n, k in [(64, 2), (200, 3), (500, 6)]:
            table, _ = solve(random_walk(n, seed=n), SolverConfig(k))
            assert cost_evaluation_count(table) <= k * n * n

        t1, _ = solve(random_walk(1000, seed=1), SolverConfig(5))
        t2, _ = solve(random_walk(2000, seed=1), SolverConfig(5))
        c1, c2 = cost_evaluation_count(t1), cost_evaluation_count(t2)
        assert c1 <= 5 * 1000**2 and c2 <= 5 * 2000**2
        assert 3.5 <= c2 / c1 <= 4.5

        # end-to-end sweep at the minute-data scale: 1560 points, k to 200
        series = random_walk(1560, seed=99)
        path = tmp_path / "minute.csv"
        with open(path, "w") as fh:
            fh.write("t,price\n")
            for m, v in enumerate(series.values, start=1):
                fh.write(f"{m},{float(v)!r}\n")
        started = time.perf_counter()
        code = main(
            ["sweep", "--input", str(path), "--column", "price", "--k-max", "200",
             "--output", str(tmp_path / "sweep.txt"),
             "--plot-data", str(tmp_path / "sweep.csv")]
        )
        elapsed = time.perf_counter() - started
        assert code == 0
        rows = (tmp_path / "sweep.csv").read_text().splitlines()
        assert len(rows) == 201
        opt = [float(line.split(",")[1]) for line in rows[1:]]
        greedy = [float(line.split(",")[2]) for line in rows[1:]]
        assert all(b <= a + 1e-12 for a, b in zip(opt, opt[1:]))
        assert all(o <= g + 1e-9 for o, g in zip(opt, greedy))
        assert elapsed < 60.0


def test_criterion_6_least_squares_identities():
    with criterion(6, "normal equations and prefix/two-pass agreement"):
        started = time.perf_counter()
        checked = 0
        for block in range(100):
            rng = np.random.default_rng(10_000 + block)
            values = rng.uniform(-1e3, 1e3, 150)
            stats = build_prefix_stats(values)
            for _ in range(100):
                start = int(rng.integers(1, 149))
                end = int(rng.integers(start + 1, 151))
                seg = fit_segment(stats, start, end)
                m = np.arange(start, end + 1, dtype=np.float64)
                window = values[start - 1 : end]
                resid = window - seg.fitted(m)
                scale = 1e-9 * (1.0 + float((window**2).sum()))
                assert abs(resid.sum()) <= scale
                assert abs((resid * m).sum()) <= scale
                slow = two_pass_sse(values, start, end)
                assert abs(seg.sse - slow) <= 1e-8 * (1.0 + float((window**2).sum()))
                checked += 1
        assert checked == 10_000
        assert time.perf_counter() - started < 10.0


def test_criterion_7_one_table_prices_every_level():
    with criterion(7, "levels from one solve match independent solves bitwise"):
        for seed in range(10):
            values = random_walk(60, seed=seed)
            table, _ = solve(values, SolverConfig(10))
            parts = partitions_all_levels(table)
            for i in range(1, 11):
                _, independent = solve(values, SolverConfig(i))
                assert parts[i - 1].pivots == independent.pivots
                assert parts[i - 1].gmse == independent.gmse  # bit-identical
        # sanity anchor for the shared level-1 cell
        stats = build_prefix_stats(values)
        assert float(table.cost[1, 60]) == segment_sse(stats, 1, 60)


def test_criterion_8_cli_exit_codes_and_reproducibility(tmp_path):
    with criterion(8, "documented exit codes, byte-identical reruns"):
        steps = tmp_path / "steps.csv"
        steps.write_text("t,v\na,0\nb,0\nc,1\nd,1\n")
        malformed = tmp_path / "bad.csv"
        malformed.write_text("t,v\na,0\nb,\nc,1\n")

        def run(*args):
            return subprocess.run(
                [sys.executable, "-m", "omslr", *args],
                capture_output=True,
                text=True,
            )

        missing_col = run("segment", "--input", str(steps), "--column", "nope", "--k", "2")
        assert missing_col.returncode == 3

        infeasible = run("segment", "--input", str(steps), "--column", "v", "--k", "3")
        assert infeasible.returncode == 4

        bad_row = run("segment", "--input", str(malformed), "--column", "v", "--k", "1")
        assert bad_row.returncode == 3
        assert "row 3" in bad_row.stderr

        ok = run("segment", "--input", str(steps), "--column", "v", "--k", "2")
        assert ok.returncode == 0

        snapshots = []
        for tag in ("one", "two"):
            report = tmp_path / f"r-{tag}.txt"
            plot = tmp_path / f"p-{tag}.csv"
            res = run(
                "sweep", "--input", "data/sample_prices.csv", "--column", "close",
                "--k-max", "5", "--output", str(report), "--plot-data", str(plot),
            )
            assert res.returncode == 0
            snapshots.append((report.read_bytes(), plot.read_bytes()))
        assert snapshots[0] == snapshots[1]
