"""Command line interface: `omslr segment` and `omslr sweep`.

Exit codes: 0 success, 2 usage error, 3 input parse error, 4 infeasible
configuration (series too short for k * min_seg). Timing goes to stderr so
written reports stay byte-identical across runs.
"""

from __future__ import annotations

import argparse
import sys
import time

from .baselines import bottom_up
from .io import (
    SeriesFileError,
    build_segmentation_report,
    emit_plot_data,
    read_csv,
    render_segmentation_json,
    render_segmentation_text,
    render_sweep_json,
    render_sweep_text,
)
from .model_select import first_k_within, sweep
from .solver import InfeasibleError, SolverConfig, cost_evaluation_count, partitions_all_levels, solve


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def _min_seg(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"minimum segment length must be >= 2, got {text}")
    return value


def _column(text: str):
    try:
        idx = int(text)
    except ValueError:
        return text
    if idx < 0:
        raise argparse.ArgumentTypeError(f"column index must be >= 0, got {text}")
    return idx


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omslr",
        description="Optimal k-segment piecewise linear regression of a univariate series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="delimited text file to read")
    common.add_argument(
        "--column",
        type=_column,
        default=None,
        help="value column, by header name or 0-based index (default: last column)",
    )
    common.add_argument("--delimiter", default=",", help="input field delimiter (default ,)")
    common.add_argument(
        "--min-seg", type=_min_seg, default=2, help="minimum segment length (default 2)"
    )
    common.add_argument("--output", default=None, help="write the report here instead of stdout")
    common.add_argument("--plot-data", default=None, help="write plot-ready rows to this file")
    common.add_argument(
        "--format", choices=("text", "json"), default="text", help="report format"
    )
    rows = common.add_mutually_exclusive_group()
    rows.add_argument(
        "--strict",
        action="store_true",
        default=True,
        help="reject any malformed value cell (default)",
    )
    rows.add_argument(
        "--skip-bad-rows",
        action="store_true",
        help="drop rows whose value cell does not parse as a finite number",
    )

    seg = sub.add_parser("segment", parents=[common], help="fit one k-segment partition")
    seg.add_argument("--k", type=_positive_int, required=True, help="number of segments")
    seg.add_argument(
        "--algorithm",
        choices=("omslr", "bottom-up"),
        default="omslr",
        help="omslr is exact; bottom-up is the greedy baseline",
    )
    seg.add_argument(
        "--all-levels",
        action="store_true",
        help="also report the optimal partition for every segment count up to k",
    )

    swp = sub.add_parser("sweep", parents=[common], help="GMSE curve for k = 1..k-max")
    swp.add_argument("--k-max", type=_positive_int, required=True, help="largest k to price")
    swp.add_argument(
        "--gmse-bound",
        type=float,
        default=None,
        help="also report the smallest k whose GMSE is within this bound",
    )
    return parser


def _write_report(text: str, output) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


def run_segment(ns) -> "SegmentationReport":
    series, labels = read_csv(
        ns.input, column=ns.column, delimiter=ns.delimiter, strict=not ns.skip_bad_rows
    )
    started = time.perf_counter()
    levels = None
    evals = None
    if ns.algorithm == "omslr":
        table, partition = solve(series, SolverConfig(ns.k, ns.min_seg))
        evals = cost_evaluation_count(table)
        if ns.all_levels:
            levels = partitions_all_levels(table)
    else:
        partition = bottom_up(series, SolverConfig(ns.k, ns.min_seg))
    elapsed = time.perf_counter() - started

    report = build_segmentation_report(
        ns.input,
        partition,
        labels,
        algorithm=ns.algorithm,
        min_seg=ns.min_seg,
        cost_evaluations=evals,
        level_partitions=levels,
        wall_time_s=elapsed,
    )
    render = render_segmentation_json if ns.format == "json" else render_segmentation_text
    _write_report(render(report), ns.output)
    if ns.plot_data is not None:
        emit_plot_data(ns.plot_data, partition, series=series, labels=labels)
    print(f"wall-time-s: {elapsed:.6f}", file=sys.stderr)
    return report


def run_sweep(ns):
    series, labels = read_csv(
        ns.input, column=ns.column, delimiter=ns.delimiter, strict=not ns.skip_bad_rows
    )
    started = time.perf_counter()
    result = sweep(series, ns.k_max, ns.min_seg, include_baseline=True)
    elapsed = time.perf_counter() - started

    min_k = None
    if ns.gmse_bound is not None:
        min_k = first_k_within(result.solver_gmse, ns.gmse_bound)
    render = render_sweep_json if ns.format == "json" else render_sweep_text
    _write_report(render(result, ns.input, series.n, ns.gmse_bound, min_k), ns.output)
    if ns.plot_data is not None:
        emit_plot_data(ns.plot_data, result)
    print(f"wall-time-s: {elapsed:.6f}", file=sys.stderr)
    return result


def main(argv=None) -> int:
    parser = make_parser()
    ns = parser.parse_args(argv)
    if ns.command == "segment" and ns.all_levels and ns.algorithm != "omslr":
        parser.error("--all-levels requires --algorithm omslr")
    try:
        if ns.command == "segment":
            run_segment(ns)
        else:
            run_sweep(ns)
    except SeriesFileError as exc:
        print(f"omslr: input error: {exc}", file=sys.stderr)
        return 3
    except InfeasibleError as exc:
        print(f"omslr: infeasible: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
