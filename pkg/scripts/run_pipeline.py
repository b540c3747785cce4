"""Full pipeline demo: scripted play, frame capture, classification, and a
score-table report for every difficulty level.

    python scripts/run_pipeline.py [out_dir] [model.json]

Without a model argument the counts come from ground truth; with one, from
the confusion-matrix diagonal of the classified frames.
"""
import sys
from pathlib import Path

from trymove.cli import main as cli_main
from trymove.engine import LEVELS, difficulty_config, script_solution
from trymove.sessionio import write_log

if __name__ == "__main__":
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("trymove-data")
    model = sys.argv[2] if len(sys.argv) > 2 else None
    out_dir.mkdir(parents=True, exist_ok=True)

    logs = []
    for seed, level in enumerate(LEVELS, start=1):
        config = difficulty_config(level)
        _, events = script_solution(config, seed)
        script = out_dir / f"solution-{level}.jsonl"
        write_log(script, config, seed, events)
        log = out_dir / f"session-{level}.jsonl"
        frames = out_dir / f"frames-{level}"
        code = cli_main(["play", "--script", str(script), "--out", str(log),
                         "--frames-dir", str(frames)])
        if code != 0:
            raise SystemExit(code)
        logs.append((log, frames))

    args = ["report", "--format", "table", "--logs"] + [str(log) for log, _ in logs]
    if model:
        # one frames dir per log is not expressible in a single report call;
        # score classified sessions individually instead
        for log, frames in logs:
            print(f"\n== {log.name} (classified) ==")
            cli_main(["score", "--log", str(log), "--model", model,
                      "--frames-dir", str(frames)])
    else:
        print()
        raise SystemExit(cli_main(args))
