"""Tabular reports with provenance columns and self-checking rebuilds.

Published figures are re-derived from the device catalog and cost model,
then compared against the printed values they reproduce.  Each row keeps
a provenance pair (tag, source location) so output is auditable.
"""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass, field

from . import refdata
from .devices import Fleet, cost_per_bit, default_catalog, find_device, resource_rate
from .estimators import (
    SECONDS_PER_DAY,
    SECONDS_PER_HOUR,
    SECONDS_PER_MONTH,
    SECONDS_PER_YEAR,
    BruteForceModel,
    Tf1Estimate,
    Tf1Model,
    break_time,
    brute_force_cost,
    tf1_estimate,
)

Cell = int | float | str


@dataclass(frozen=True)
class Report:
    title: str
    columns: tuple[str, ...]
    rows: tuple[tuple[Cell, ...], ...]
    provenance: tuple[tuple[str, str], ...]  # (tag, source location) per row
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if len(self.provenance) != len(self.rows):
            raise ValueError("one provenance pair per row")
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError("row width must match columns")


def relative_deviation(computed: float, printed: float) -> float:
    if printed == 0:
        raise ValueError("printed value must be nonzero")
    return abs(computed - printed) / abs(printed)


def format_duration(seconds: float) -> str:
    """Render a duration in the unit a reader would pick by hand."""
    if seconds < 0:
        raise ValueError("duration must be nonnegative")
    if seconds < 300:
        return f"{seconds:.4g} s"
    if seconds < 3 * SECONDS_PER_DAY:
        return f"{seconds / SECONDS_PER_HOUR:.4g} hours"
    if seconds < 92 * SECONDS_PER_DAY:
        return f"{seconds / SECONDS_PER_DAY:.4g} days"
    if seconds < 1.5 * SECONDS_PER_YEAR:
        return f"{seconds / SECONDS_PER_MONTH:.4g} months"
    return f"{seconds / SECONDS_PER_YEAR:.4g} years"


def _cell_text(value: Cell) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def render_text(report: Report) -> str:
    headers = list(report.columns) + ["source"]
    body = [
        [_cell_text(v) for v in row] + [f"{tag} {loc}".strip()]
        for row, (tag, loc) in zip(report.rows, report.provenance)
    ]
    widths = [
        max(len(headers[i]), *(len(r[i]) for r in body)) if body else len(headers[i])
        for i in range(len(headers))
    ]
    lines = [report.title]
    lines.append("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip())
    lines.append("  ".join("-" * w for w in widths))
    for r in body:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def render_csv(report: Report) -> str:
    """CSV with repr floats, so parsing it back is bit-exact."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(list(report.columns) + ["provenance_tag", "provenance_source"])
    for row, (tag, loc) in zip(report.rows, report.provenance):
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row] + [tag, loc])
    return out.getvalue()


_INT_RE = re.compile(r"[+-]?\d+\Z")


def _cell_from_csv(text: str) -> Cell:
    if _INT_RE.match(text):
        return int(text)
    try:
        return float(text)
    except ValueError:
        return text


def report_from_csv(text: str, title: str = "") -> Report:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if len(header) < 2 or header[-2:] != ["provenance_tag", "provenance_source"]:
        raise ValueError("missing provenance columns")
    columns = tuple(header[:-2])
    rows = []
    provenance = []
    for line in reader:
        if not line:
            continue
        rows.append(tuple(_cell_from_csv(c) for c in line[:-2]))
        provenance.append((line[-2], line[-1]))
    return Report(title=title, columns=columns, rows=tuple(rows), provenance=tuple(provenance))


def build_device_rate_report() -> Report:
    """Per-device resource rates against their published counterparts."""
    rows = []
    provenance = []
    for device in default_catalog():
        printed = refdata.TABLE1_PRINTED[device.name]
        computed = resource_rate(device)
        rows.append(
            (
                device.name,
                device.transistor_count,
                device.clock_hz,
                computed,
                printed,
                relative_deviation(computed, printed),
            )
        )
        provenance.append(("printed", refdata.TABLE1_LOCATION))
    return Report(
        title="Device resource rates (bytes/s)",
        columns=(
            "device",
            "transistors",
            "clock_hz",
            "computed_rate",
            "printed_rate",
            "deviation",
        ),
        rows=tuple(rows),
        provenance=tuple(provenance),
        notes=(f"tolerance {refdata.TABLE1_TOLERANCE:.3g} relative",),
    )


def build_cost_per_bit_report() -> Report:
    """Per-bit prices of published primitives against printed figures."""
    index = {d.name: d for d in default_catalog()}
    rows = []
    provenance = []
    for cell in refdata.TABLE2_CELLS:
        record = refdata.throughput_for(cell)
        computed = cost_per_bit(
            Fleet(index[record.device_name], cell.unit_count), record
        )
        printed = cell.printed_bytes_per_bit
        rows.append(
            (
                cell.row,
                record.device_name,
                cell.unit_count,
                record.algorithm,
                record.operation,
                computed,
                printed,
                relative_deviation(computed, printed),
            )
        )
        provenance.append(("printed", refdata.TABLE2_LOCATION))
    return Report(
        title="Encryption prices (bytes/bit)",
        columns=(
            "platform",
            "device",
            "units",
            "algorithm",
            "operation",
            "computed_bytes",
            "printed_bytes",
            "deviation",
        ),
        rows=tuple(rows),
        provenance=tuple(provenance),
        notes=(f"tolerance {refdata.TABLE2_TOLERANCE:.3g} relative",),
    )


def table3_estimate(row: "refdata.Table3Row") -> "Tf1Estimate":
    """The row's search estimate on its stated reference cluster."""
    gpu = find_device("ati-radeon-5870", default_catalog())
    return tf1_estimate(Tf1Model(word_bits=row.word_bits), Fleet(gpu, row.cluster_units))


def build_state_search_report() -> Report:
    """Strength ladder for packed-state recovery, with printed durations."""
    rows = []
    provenance = []
    for row in refdata.TABLE3_ROWS:
        estimate = table3_estimate(row)
        seconds = estimate.expected_seconds
        rows.append(
            (
                row.word_bits,
                estimate.effective_strength_bits,
                estimate.expected_scan_words,
                row.printed_values,
                estimate.state_search_cost,
                row.cluster_units,
                format_duration(seconds),
                row.printed_time,
                relative_deviation(seconds, row.expected_seconds),
            )
        )
        provenance.append(("printed", refdata.TABLE3_LOCATION))
    return Report(
        title="Feedback-word state search costs",
        columns=(
            "word_bits",
            "strength_bits",
            "expected_scan_words",
            "printed_values",
            "cost_bytes",
            "cluster_units",
            "computed_time",
            "printed_time",
            "deviation",
        ),
        rows=tuple(rows),
        provenance=tuple(provenance),
        notes=(f"time tolerance {refdata.TABLE3_TIME_TOLERANCE:.3g} relative",),
    )


def build_break_suite_report() -> Report:
    """Brute-force wall times for the published machine/keysize pairings."""
    catalog = {d.name: d for d in default_catalog()}
    gpu = catalog["ati-radeon-5870"]
    rows = []
    provenance = []

    def add(label: str, key_bits: int, fleet, printed: str) -> None:
        est = break_time(brute_force_cost(BruteForceModel(key_bits)), fleet)
        rows.append((label, key_bits, est.total_cost, est.expected_seconds,
                     format_duration(est.expected_seconds), printed))
        provenance.append(("printed", refdata.BREAK_SUITE_LOCATION))

    add("one gpu", 56, Fleet(gpu, 1), "132.5 s")
    add("one gpu", 64, Fleet(gpu, 1), "10.77 hours")
    add("gpu fleet of 65536", 84, Fleet(gpu, 65536), "10.1 days")
    add("gpu fleet of 65536", 96, Fleet(gpu, 65536), "120.8 years")
    add("tianhe-1a", 84, refdata.TIANHE_PRINTED_RATE, "86.8 days")
    return Report(
        title="Exhaustive search wall times",
        columns=("fleet", "key_bits", "cost_bytes", "expected_seconds",
                 "computed_time", "printed_time"),
        rows=tuple(rows),
        provenance=tuple(provenance),
    )


def report_failures(report: Report, deviation_column: str, tolerance: float) -> list[str]:
    """Rows whose deviation column exceeds tolerance, as readable lines."""
    idx = report.columns.index(deviation_column)
    bad = []
    for row in report.rows:
        dev = row[idx]
        assert isinstance(dev, float)
        if not math.isfinite(dev) or dev > tolerance:
            bad.append(f"{row[0]}: deviation {dev:.4g} exceeds {tolerance:.4g}")
    return bad
