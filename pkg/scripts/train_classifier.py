"""Train the gesture classifier on the default synthetic recipe and report
held-out accuracy plus the confusion matrix.

    python scripts/train_classifier.py [out_dir]

Writes model.json and confusion.csv into out_dir (default trymove-data/).
"""
import sys
import time
from pathlib import Path

from trymove.classifier.frames import build_dataset
from trymove.classifier.metrics import evaluate, save_confusion_csv
from trymove.classifier.network import Hyper, build_default_model, save_model, train
from trymove.cli import (
    EVAL_FRAMES_PER_CLASS,
    EVAL_SET_SEED,
    TRAIN_FRAMES_PER_CLASS,
    TRAIN_SET_SEED,
)

if __name__ == "__main__":
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("trymove-data")
    out_dir.mkdir(parents=True, exist_ok=True)

    t0 = time.time()
    dataset = build_dataset(TRAIN_FRAMES_PER_CLASS, TRAIN_SET_SEED)
    model = build_default_model(seed=0)
    model, losses = train(model, dataset, Hyper(epochs=10, seed=0))
    print(f"trained on {len(dataset)} frames in {time.time()-t0:.0f}s")
    print("loss curve:", " ".join(f"{l:.4f}" for l in losses))

    heldout = build_dataset(EVAL_FRAMES_PER_CLASS, EVAL_SET_SEED)
    cm = evaluate(model, heldout)
    print(f"held-out accuracy {cm.accuracy:.4f} (diagonal {cm.trace}/{cm.total})")

    save_model(model, out_dir / "model.json")
    save_confusion_csv(cm, out_dir / "confusion.csv")
    print(f"wrote {out_dir / 'model.json'} and {out_dir / 'confusion.csv'}")
