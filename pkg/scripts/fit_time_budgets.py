"""Re-derive the per-level time budgets from the reference score table and
record the fit in data/time_budget_fit.json.

The fit enumerates integer budgets 100..1000 under both rounding modes; the
pinned constants are the whole-minute optima under the globally best mode.
Run from the repository root:

    python scripts/fit_time_budgets.py
"""
import json
from dataclasses import asdict
from pathlib import Path

from trymove.scoring import TIME_BUDGETS, fit_time_budgets

if __name__ == "__main__":
    fits = fit_time_budgets()
    for level, fit in fits.items():
        pinned = TIME_BUDGETS[level]
        marker = "ok" if pinned == fit.t_total else "DRIFT"
        print(
            f"{level:10s} fitted={fit.t_total} ({fit.rounding}, error {fit.error}) "
            f"unconstrained={fit.unconstrained_t_total} (error {fit.unconstrained_error}) "
            f"pinned={pinned} [{marker}]"
        )
    out = Path(__file__).resolve().parents[1] / "data" / "time_budget_fit.json"
    out.parent.mkdir(exist_ok=True)
    out.write_text(
        json.dumps({level: asdict(fit) for level, fit in fits.items()}, indent=1) + "\n"
    )
    print(f"wrote {out}")
