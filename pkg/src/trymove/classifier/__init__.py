"""Gesture frame synthesis, the from-scratch convolutional classifier, and
confusion-matrix tooling."""

from .frames import Frame, glyph_template, load_pgm, save_pgm, synth_frames
from .metrics import (
    ConfusionMatrix,
    PerfectPredictor,
    diagonal_counts,
    evaluate,
    load_confusion_csv,
    save_confusion_csv,
)
from .network import (
    Hyper,
    Model,
    build_default_model,
    build_micro_model,
    forward,
    gradient_check,
    load_model,
    save_model,
    train,
)

__all__ = [
    "ConfusionMatrix",
    "Frame",
    "Hyper",
    "Model",
    "PerfectPredictor",
    "build_default_model",
    "build_micro_model",
    "diagonal_counts",
    "evaluate",
    "forward",
    "glyph_template",
    "gradient_check",
    "load_confusion_csv",
    "load_model",
    "load_pgm",
    "save_confusion_csv",
    "save_model",
    "save_pgm",
    "synth_frames",
    "train",
]
