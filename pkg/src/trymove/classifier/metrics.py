"""Confusion-matrix construction and the diagonal feeding the scorer."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..taxonomy import canonical_order
from .frames import Frame


@dataclass
class ConfusionMatrix:
    """16x16 counts; rows are true classes, columns predictions."""

    counts: list[list[int]]

    @classmethod
    def zeros(cls) -> "ConfusionMatrix":
        return cls([[0] * 16 for _ in range(16)])

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    @property
    def trace(self) -> int:
        return sum(self.counts[i][i] for i in range(16))

    def row_sums(self) -> list[int]:
        return [sum(row) for row in self.counts]

    @property
    def accuracy(self) -> float:
        total = self.total
        return self.trace / total if total else 0.0


def diagonal_counts(cm: ConfusionMatrix) -> list[int]:
    """Per-class correctly-classified counts, in canonical order.

    This vector stands in for the per-gesture counts when a session is
    scored from classified frames rather than ground truth.
    """
    return [cm.counts[i][i] for i in range(16)]


class PerfectPredictor:
    """Oracle stub: predicts each frame's own label with certainty."""

    def predict_proba(self, frames) -> np.ndarray:
        probs = np.zeros((len(frames), 16))
        for i, frame in enumerate(frames):
            if frame.label is None:
                raise ValueError("perfect predictor needs labeled frames")
            probs[i, frame.label.ordinal] = 1.0
        return probs


def evaluate(model, frames: list[Frame], batch_size: int = 256) -> ConfusionMatrix:
    """Count (true, predicted) pairs; argmax ties break to the lowest ordinal."""
    cm = ConfusionMatrix.zeros()
    for start in range(0, len(frames), batch_size):
        chunk = frames[start : start + batch_size]
        probs = model.predict_proba(chunk)
        predicted = np.argmax(probs, axis=1)  # first max wins: lowest ordinal
        for frame, pred in zip(chunk, predicted):
            if frame.label is None:
                raise ValueError("evaluation needs labeled frames")
            cm.counts[frame.label.ordinal][int(pred)] += 1
    return cm


def save_confusion_csv(cm: ConfusionMatrix, path: str | Path) -> None:
    header = ",".join(cls.code for cls in canonical_order())
    lines = [header] + [",".join(str(v) for v in row) for row in cm.counts]
    Path(path).write_text("\n".join(lines) + "\n")


def load_confusion_csv(path: str | Path) -> ConfusionMatrix:
    lines = Path(path).read_text().strip().splitlines()
    expected = ",".join(cls.code for cls in canonical_order())
    if not lines or lines[0] != expected:
        raise ValueError(f"{path}: missing class-code header row")
    if len(lines) != 17:
        raise ValueError(f"{path}: expected 16 count rows, got {len(lines) - 1}")
    counts = [[int(v) for v in line.split(",")] for line in lines[1:]]
    if any(len(row) != 16 for row in counts):
        raise ValueError(f"{path}: every row needs 16 columns")
    return ConfusionMatrix(counts)
