"""Session log persistence, the classify-then-score pipeline, and reports.

A session log is line-delimited JSON: a header record carrying the schema
version, difficulty config and puzzle seed, then one gesture event per
line. The log is the unit of replay (engine) and of analysis (here).

Reports mirror the score-table layout: level, end time, time bonus, the 16
per-gesture counts, gesture sum, muscle-weighted sum, final score. Rows
built from classified frames are marked source=classified; rows carrying
only sums (no per-gesture counts) render dashes in the count columns.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .classifier.frames import Frame, load_pgm
from .classifier.metrics import diagonal_counts, evaluate
from .engine import (
    DifficultyConfig,
    GestureEvent,
    config_document,
    config_from_document,
    event_document,
    event_from_document,
)
from .taxonomy import canonical_order

SESSION_SCHEMA = "trymove-session/1"

DATA_DIR_ENV = "TRYMOVE_DATA_DIR"


class SessionLogError(ValueError):
    """Malformed session log; message carries the line number."""


def data_dir() -> Path:
    return Path(os.environ.get(DATA_DIR_ENV, "trymove-data"))


def write_log(path: str | Path, config: DifficultyConfig, seed: int, events) -> None:
    header = {"version": SESSION_SCHEMA, "config": config_document(config), "seed": seed}
    lines = [json.dumps(header)]
    lines.extend(json.dumps(event_document(e)) for e in events)
    Path(path).write_text("\n".join(lines) + "\n")


def ingest_log(path: str | Path) -> tuple[DifficultyConfig, int, list[GestureEvent]]:
    """Parse and validate a session log; timestamps must be non-decreasing."""
    raw_lines = Path(path).read_text().splitlines()
    if not raw_lines:
        raise SessionLogError(f"{path}:1: empty log, expected a header record")

    def parse(line_no: int, text: str) -> dict:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SessionLogError(f"{path}:{line_no}: invalid JSON: {exc.msg}") from None
        if not isinstance(doc, dict):
            raise SessionLogError(f"{path}:{line_no}: expected an object")
        return doc

    header = parse(1, raw_lines[0])
    if header.get("version") != SESSION_SCHEMA:
        raise SessionLogError(
            f"{path}:1: unsupported version {header.get('version')!r}, expected {SESSION_SCHEMA!r}"
        )
    if "config" not in header or "seed" not in header:
        raise SessionLogError(f"{path}:1: header needs 'config' and 'seed'")
    try:
        config = config_from_document(header["config"])
    except (KeyError, ValueError) as exc:
        raise SessionLogError(f"{path}:1: bad config: {exc}") from None

    events: list[GestureEvent] = []
    last_t = None
    for line_no, text in enumerate(raw_lines[1:], start=2):
        if not text.strip():
            raise SessionLogError(f"{path}:{line_no}: blank line inside log")
        doc = parse(line_no, text)
        try:
            event = event_from_document(doc)
        except (KeyError, ValueError, TypeError) as exc:
            raise SessionLogError(f"{path}:{line_no}: bad event: {exc}") from None
        if last_t is not None and event.timestamp < last_t:
            raise SessionLogError(
                f"{path}:{line_no}: timestamp {event.timestamp} precedes {last_t}"
            )
        last_t = event.timestamp
        events.append(event)
    return config, header["seed"], events


def ground_truth_counts(events) -> list[int]:
    counts = [0] * 16
    for event in events:
        counts[event.gesture.ordinal] += 1
    return counts


def pipeline_counts(
    events, model=None, frames_dir: str | Path | None = None
) -> list[int]:
    """Per-gesture counts for scoring.

    Without a model this is the ground-truth tally of event classes (the
    unclassified comparison mode). With a model, every event's captured
    frame is classified, a confusion matrix is built against the events'
    true classes, and its diagonal becomes the count vector.
    """
    if model is None:
        return ground_truth_counts(events)
    base = Path(frames_dir) if frames_dir is not None else data_dir()
    frames: list[Frame] = []
    for event in events:
        if event.frame_ref is None:
            continue
        frame_path = base / event.frame_ref
        if not frame_path.exists():
            raise IOError(f"frame file not found: {frame_path}")
        frames.append(load_pgm(frame_path, label=event.gesture))
    return diagonal_counts(evaluate(model, frames))


@dataclass(frozen=True)
class ReportRow:
    level: str
    t_end: float
    time_bonus: int | None  # None renders "-" (no time budget)
    counts: tuple[int, ...] | None  # None for sums-only rows
    gesture_sum: int
    weighted_sum: int
    final: int
    source: str = "ground_truth"

    def __post_init__(self):
        if self.counts is not None and len(self.counts) != 16:
            raise ValueError(f"count vector needs 16 entries, got {len(self.counts)}")
        bonus = self.time_bonus or 0
        if self.final != bonus + self.gesture_sum + self.weighted_sum:
            raise ValueError(
                f"final {self.final} != bonus {bonus} + sums "
                f"{self.gesture_sum}+{self.weighted_sum}"
            )
        if self.source not in ("ground_truth", "classified"):
            raise ValueError(f"unknown source {self.source!r}")


REPORT_COLUMNS = (
    ["level", "t_end", "bonus"]
    + [cls.code for cls in canonical_order()]
    + ["gesture_sum", "weighted_sum", "F"]
)


def _row_values(row: ReportRow) -> list[str]:
    t_end = f"{row.t_end:g}"
    bonus = "-" if row.time_bonus is None else str(row.time_bonus)
    counts = (
        [str(c) for c in row.counts] if row.counts is not None else ["-"] * 16
    )
    return [row.level, t_end, bonus] + counts + [
        str(row.gesture_sum), str(row.weighted_sum), str(row.final),
    ]


def render_report(rows, fmt: str = "table") -> str:
    """Report text; fmt "csv" is machine-readable, "table" is aligned."""
    if fmt == "csv":
        lines = [",".join(REPORT_COLUMNS)]
        lines.extend(",".join(_row_values(row)) for row in rows)
        return "\n".join(lines) + "\n"
    if fmt != "table":
        raise ValueError(f"unknown report format {fmt!r}")
    table = [REPORT_COLUMNS] + [_row_values(row) for row in rows]
    widths = [max(len(line[i]) for line in table) for i in range(len(REPORT_COLUMNS))]
    rendered = []
    for line in table:
        cells = [line[0].ljust(widths[0])] + [
            cell.rjust(widths[i]) for i, cell in enumerate(line) if i > 0
        ]
        rendered.append("  ".join(cells).rstrip())
    return "\n".join(rendered) + "\n"


def reference_report_rows() -> list[ReportRow]:
    """The calibration sessions as ready-to-render report rows."""
    from .scoring import REFERENCE_ROWS

    return [
        ReportRow(
            level=row.level,
            t_end=row.t_end,
            time_bonus=row.bonus,
            counts=row.counts,
            gesture_sum=row.gesture_sum,
            weighted_sum=row.weighted_sum,
            final=row.final,
        )
        for row in REFERENCE_ROWS
    ]
