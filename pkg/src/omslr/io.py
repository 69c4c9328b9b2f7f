"""CSV ingestion and report / plot-data emission for the command line tool.

Input files are delimited text with one value column selected by name or
0-based index; any label column (dates, timestamps) is carried through to
the output untouched and never enters a fit. All emitted files are
deterministic: identical inputs and flags produce byte-identical bytes.
Floats in text output use 17 significant digits so values round-trip.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass

from .core import TimeSeries
from .model_select import SweepResult
from .solver import Partition


class SeriesFileError(Exception):
    """Base for input-file problems; carries the offending row when known."""

    def __init__(self, message: str, row: int | None = None):
        super().__init__(message)
        self.row = row


class MissingInputError(SeriesFileError):
    """Input file absent or unreadable."""


class UnknownColumnError(SeriesFileError):
    """Selected value column not present in the file."""


class MalformedRowError(SeriesFileError):
    """A row's value cell is missing, non-numeric or non-finite."""


class EmptySeriesError(SeriesFileError):
    """No usable data rows."""


def _parse_cell(cell: str, row_num: int, col_idx: int) -> float:
    text = cell.strip()
    try:
        value = float(text)
    except ValueError:
        raise MalformedRowError(
            f"row {row_num}, column {col_idx}: {cell!r} is not a number", row=row_num
        ) from None
    if not math.isfinite(value):
        raise MalformedRowError(
            f"row {row_num}, column {col_idx}: non-finite value {cell!r}", row=row_num
        )
    return value


def read_csv(path, column=None, delimiter: str = ",", strict: bool = True):
    """Read one numeric column (plus labels) from a delimited text file.

    ``column`` selects the value column: an int is a 0-based index, a string
    is a header name, None picks the last column. With a name the first row
    must be a header; with an index the header is detected by whether the
    first row's cell parses as a number. Labels come from the first
    non-value column when there is one, else the 1-based row position.

    Strict mode (default) raises ``MalformedRowError`` naming the row for
    any non-numeric or non-finite value cell; otherwise such rows are
    skipped. Raises ``MissingInputError``, ``UnknownColumnError`` or
    ``EmptySeriesError`` for the other failure modes.

    Returns ``(TimeSeries, labels)`` with one label per retained row.
    """
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh, delimiter=delimiter))
    except OSError as exc:
        raise MissingInputError(f"cannot read {path}: {exc}") from exc

    rows = [(num, row) for num, row in enumerate(rows, start=1) if row]
    if not rows:
        raise EmptySeriesError(f"{path} contains no rows")

    first_num, first_row = rows[0]
    ncols = len(first_row)

    if isinstance(column, str):
        header = [cell.strip() for cell in first_row]
        if column not in header:
            raise UnknownColumnError(
                f"column {column!r} not found in header {header}", row=first_num
            )
        value_idx = header.index(column)
        data = rows[1:]
    else:
        value_idx = ncols - 1 if column is None else int(column)
        if not 0 <= value_idx < ncols:
            raise UnknownColumnError(
                f"column index {column} out of range; first row has {ncols} fields",
                row=first_num,
            )
        # Headerless files start with a numeric cell in the value column.
        try:
            float(first_row[value_idx].strip())
            data = rows
        except ValueError:
            data = rows[1:]

    label_idx = None
    if ncols >= 2:
        label_idx = 0 if value_idx != 0 else 1

    values: list[float] = []
    labels: list[str] = []
    for row_num, row in data:
        try:
            if value_idx >= len(row):
                raise MalformedRowError(
                    f"row {row_num} has {len(row)} fields, value column is {value_idx}",
                    row=row_num,
                )
            values.append(_parse_cell(row[value_idx], row_num, value_idx))
        except MalformedRowError:
            if strict:
                raise
            continue
        if label_idx is not None and label_idx < len(row):
            labels.append(row[label_idx])
        else:
            labels.append(str(len(values)))

    if not values:
        raise EmptySeriesError(f"{path} contains no usable data rows")
    return TimeSeries(values), labels


def fmt(x) -> str:
    """Render a number for text output (17 significant digits for floats)."""
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


@dataclass(frozen=True)
class SegmentRow:
    start: int
    end: int
    start_label: str
    end_label: str
    slope: float
    intercept: float
    sse: float


@dataclass(frozen=True)
class LevelDetail:
    """One backtracked level of a solver table (for --all-levels reports)."""

    k: int
    pivots: tuple[int, ...]
    gmse: float
    segments: tuple[SegmentRow, ...]


@dataclass(frozen=True)
class SegmentationReport:
    """Everything the segment command reports for one run.

    ``wall_time_s`` is informational only and is never serialized, so the
    written report files stay byte-identical across re-runs.
    """

    input_path: str
    n_rows: int
    algorithm: str
    k: int
    min_seg: int
    pivots: tuple[int, ...]
    segments: tuple[SegmentRow, ...]
    gmse: float
    gmse_per_point: float
    cost_evaluations: int | None = None
    levels: tuple[LevelDetail, ...] | None = None
    wall_time_s: float | None = None


def segment_rows(partition: Partition, labels) -> tuple[SegmentRow, ...]:
    return tuple(
        SegmentRow(
            start=seg.start,
            end=seg.end,
            start_label=labels[seg.start - 1],
            end_label=labels[seg.end - 1],
            slope=seg.slope,
            intercept=seg.intercept,
            sse=seg.sse,
        )
        for seg in partition.segments
    )


def build_segmentation_report(
    input_path,
    partition: Partition,
    labels,
    algorithm: str,
    min_seg: int,
    cost_evaluations: int | None = None,
    level_partitions=None,
    wall_time_s: float | None = None,
) -> SegmentationReport:
    levels = None
    if level_partitions is not None:
        levels = tuple(
            LevelDetail(p.k, p.pivots, p.gmse, segment_rows(p, labels))
            for p in level_partitions
        )
    return SegmentationReport(
        input_path=str(input_path),
        n_rows=partition.n,
        algorithm=algorithm,
        k=partition.k,
        min_seg=min_seg,
        pivots=partition.pivots,
        segments=segment_rows(partition, labels),
        gmse=partition.gmse,
        gmse_per_point=partition.gmse / partition.n,
        cost_evaluations=cost_evaluations,
        levels=levels,
        wall_time_s=wall_time_s,
    )


_SEGMENT_COLUMNS = "segment,start,end,start-label,end-label,slope,intercept,sse"


def _segment_block(segments) -> list[str]:
    lines = [_SEGMENT_COLUMNS]
    for q, row in enumerate(segments, start=1):
        lines.append(
            f"{q},{row.start},{row.end},{row.start_label},{row.end_label},"
            f"{fmt(row.slope)},{fmt(row.intercept)},{fmt(row.sse)}"
        )
    return lines


def render_segmentation_text(report: SegmentationReport) -> str:
    lines = [
        "# segmentation report",
        f"input: {report.input_path}",
        f"rows: {report.n_rows}",
        f"algorithm: {report.algorithm}",
        f"k: {report.k}",
        f"min-seg: {report.min_seg}",
        f"pivots: {','.join(str(p) for p in report.pivots)}",
        f"gmse: {fmt(report.gmse)}",
        f"gmse-per-point: {fmt(report.gmse_per_point)}",
    ]
    if report.cost_evaluations is not None:
        lines.append(f"cost-evaluations: {report.cost_evaluations}")
    lines.append("segments:")
    lines.extend(_segment_block(report.segments))
    if report.levels is not None:
        for level in report.levels:
            lines.append(f"## level {level.k}")
            lines.append(f"pivots: {','.join(str(p) for p in level.pivots)}")
            lines.append(f"gmse: {fmt(level.gmse)}")
            lines.append("segments:")
            lines.extend(_segment_block(level.segments))
    return "\n".join(lines) + "\n"


def _segment_dicts(segments):
    return [
        {
            "segment": q,
            "start": row.start,
            "end": row.end,
            "start_label": row.start_label,
            "end_label": row.end_label,
            "slope": row.slope,
            "intercept": row.intercept,
            "sse": row.sse,
        }
        for q, row in enumerate(segments, start=1)
    ]


def render_segmentation_json(report: SegmentationReport) -> str:
    doc = {
        "input": {"path": report.input_path, "rows": report.n_rows},
        "algorithm": report.algorithm,
        "k": report.k,
        "min_seg": report.min_seg,
        "pivots": list(report.pivots),
        "gmse": report.gmse,
        "gmse_per_point": report.gmse_per_point,
        "cost_evaluations": report.cost_evaluations,
        "segments": _segment_dicts(report.segments),
    }
    if report.levels is not None:
        doc["levels"] = [
            {
                "k": level.k,
                "pivots": list(level.pivots),
                "gmse": level.gmse,
                "segments": _segment_dicts(level.segments),
            }
            for level in report.levels
        ]
    return json.dumps(doc, indent=2) + "\n"


def render_sweep_text(result: SweepResult, input_path, n_rows: int,
                      bound: float | None = None, min_k: int | None = None) -> str:
    lines = [
        "# sweep report",
        f"input: {input_path}",
        f"rows: {n_rows}",
        f"k-max: {result.k_max}",
        f"min-seg: {result.min_seg}",
    ]
    if bound is not None:
        found = str(min_k) if min_k is not None else "not-found"
        lines.append(f"gmse-bound: {fmt(bound)}")
        lines.append(f"min-k: {found}")
    lines.append("curve:")
    lines.append("k,gmse-omslr,gmse-bottomup")
    for idx, k in enumerate(result.ks):
        base = fmt(result.baseline_gmse[idx]) if result.baseline_gmse is not None else ""
        lines.append(f"{k},{fmt(result.solver_gmse[idx])},{base}")
    return "\n".join(lines) + "\n"


def render_sweep_json(result: SweepResult, input_path, n_rows: int,
                      bound: float | None = None, min_k: int | None = None) -> str:
    doc = {
        "input": {"path": str(input_path), "rows": n_rows},
        "k_max": result.k_max,
        "min_seg": result.min_seg,
        "gmse_bound": bound,
        "min_k": min_k,
        "curve": [
            {
                "k": k,
                "gmse_omslr": result.solver_gmse[idx],
                "gmse_bottomup": (
                    result.baseline_gmse[idx] if result.baseline_gmse is not None else None
                ),
            }
            for idx, k in enumerate(result.ks)
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def emit_plot_data(path, result, series: TimeSeries | None = None, labels=None) -> None:
    """Write plot-ready delimited text for a Partition or a SweepResult.

    Partitions produce one row per point: index, label, value, fitted value
    and 1-based segment id. Sweeps produce one row per k with both curves.
    The (index, value) columns reproduce the parsed series exactly.
    """
    if isinstance(result, SweepResult):
        lines = ["k,gmse-omslr,gmse-bottomup"]
        for idx, k in enumerate(result.ks):
            base = fmt(result.baseline_gmse[idx]) if result.baseline_gmse is not None else ""
            lines.append(f"{k},{fmt(result.solver_gmse[idx])},{base}")
    elif isinstance(result, Partition):
        if series is None:
            raise ValueError("plot data for a partition needs the series values")
        if labels is None:
            labels = [str(m) for m in range(1, series.n + 1)]
        lines = ["index,label,value,fitted,segment"]
        for q, seg in enumerate(result.segments, start=1):
            for m in range(seg.start, seg.end + 1):
                value = float(series.values[m - 1])
                lines.append(
                    f"{m},{labels[m - 1]},{fmt(value)},{fmt(float(seg.fitted(m)))},{q}"
                )
    else:
        raise TypeError(f"cannot emit plot data for {type(result).__name__}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
