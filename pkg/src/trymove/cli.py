"""Command-line surface: puzzle generation, scripted play, training,
scoring and the service.

Exit codes: 0 success, 1 validation error, 2 I/O error.
"""
from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path

from . import engine, puzzlegen, scoring, sessionio
from .classifier import frames as frames_mod
from .classifier import metrics as metrics_mod
from .classifier import network as network_mod
from .taxonomy import GestureClass

# Default synthesis recipe: disjoint seeds keep the held-out set unseen.
TRAIN_FRAMES_PER_CLASS = 200
EVAL_FRAMES_PER_CLASS = 50
TRAIN_SET_SEED = 11
EVAL_SET_SEED = 99


def _gen(args) -> int:
    if args.level:
        config = engine.difficulty_config(args.level)
        size, pieces, fakes = (
            config.grid_size, config.requested_pieces, config.fake_count,
        )
    else:
        if args.size is None or args.pieces is None:
            print("gen needs --level or both --size and --pieces", file=sys.stderr)
            return 1
        size, pieces, fakes = args.size, args.pieces, args.fakes or 0
    spec = puzzlegen.generate_puzzle(size, pieces, args.seed, fakes)
    out = Path(args.out or "puzzle.json")
    puzzlegen.save_puzzle(spec, out)
    print(
        f"wrote {out}: size={spec.size} pieces={len(spec.pieces)} "
        f"fakes={len(spec.fakes)} missing={spec.missing_count} "
        f"attempts_exhausted={spec.attempts_exhausted}"
    )
    return 0


def _solve(args) -> int:
    config = engine.difficulty_config(args.level)
    session, events = engine.script_solution(config, args.seed, dt=args.dt)
    out = Path(args.out or f"solution-{args.level}-{args.seed}.jsonl")
    sessionio.write_log(out, config, args.seed, events)
    score = scoring.final_score(session.t_end, config, session.counts)
    print(f"wrote {out}: {len(events)} events, t_end={session.t_end:g}, F={score.final}")
    return 0


def _play(args) -> int:
    config, seed, events = sessionio.ingest_log(args.script)
    session = engine.new_session(config, seed)
    frames_dir = Path(args.frames_dir or (sessionio.data_dir() / f"frames-{session.id}"))
    frames_dir.mkdir(parents=True, exist_ok=True)

    captured: list[tuple[int, GestureClass]] = []
    for i, event in enumerate(events):
        name = f"frame_{i:05d}_{event.gesture.code}.pgm"
        outcome = engine.apply_event(
            session,
            engine.GestureEvent(
                timestamp=event.timestamp,
                gesture=event.gesture,
                target_piece=event.target_piece,
                translation=event.translation,
                rotation=event.rotation,
                frame_ref=name,
            ),
        )
        if outcome.frame_captured:
            captured.append((i, event.gesture))

    # Frames per class are drawn in one deterministic sequence per session.
    per_class = Counter(gesture for _, gesture in captured)
    pools = {
        gesture: iter(frames_mod.synth_frames(gesture, count, seed))
        for gesture, count in per_class.items()
    }
    by_index = {i: next(pools[gesture]) for i, gesture in captured}
    for (i, gesture), logged in zip(captured, (e for e in session.event_log if e.frame_ref)):
        frames_mod.save_pgm(by_index[i], frames_dir / logged.frame_ref)

    out = Path(args.out or f"session-{session.id}.jsonl")
    sessionio.write_log(out, config, seed, session.event_log)
    t_end = session.t_end if session.completed else (
        session.event_log[-1].timestamp if session.event_log else 0.0
    )
    score = scoring.score_from(
        t_end, config.t_total if session.completed else None, session.counts, config.rounding
    )
    status = "completed" if session.completed else "unfinished"
    print(
        f"wrote {out}: {status}, {len(session.event_log)} events, "
        f"{session.frames_captured} frames in {frames_dir}, F={score.final}"
    )
    return 0


def _train(args) -> int:
    hyper = network_mod.Hyper(
        learning_rate=args.lr, batch_size=args.batch, epochs=args.epochs, seed=args.seed
    )
    dataset = frames_mod.build_dataset(args.per_class, TRAIN_SET_SEED)
    model = network_mod.build_default_model(seed=args.seed, hyper=hyper)
    model, losses = network_mod.train(model, dataset, hyper)
    out = Path(args.out or "model.json")
    network_mod.save_model(model, out)
    print(f"trained on {len(dataset)} frames; per-epoch loss: "
          + " ".join(f"{l:.4f}" for l in losses))
    print(f"wrote {out}")
    return 0


def _eval(args) -> int:
    model = network_mod.load_model(args.model)
    heldout = frames_mod.build_dataset(args.per_class, EVAL_SET_SEED)
    cm = metrics_mod.evaluate(model, heldout)
    if args.out:
        metrics_mod.save_confusion_csv(cm, args.out)
        print(f"wrote {args.out}")
    print(f"evaluated {cm.total} frames: accuracy {cm.accuracy:.4f} "
          f"(diagonal {cm.trace}/{cm.total})")
    return 0


def _score(args) -> int:
    config, seed, events = sessionio.ingest_log(args.log)
    model = network_mod.load_model(args.model) if args.model else None
    counts = sessionio.pipeline_counts(events, model, args.frames_dir)
    session = engine.replay(config, seed, events)

    rounding = args.rounding or config.rounding
    if session.completed:
        t_end = session.t_end
        t_total = args.t_total_override or config.t_total
    else:
        t_end = events[-1].timestamp if events else 0.0
        t_total = None  # unfinished sessions earn no time bonus
    breakdown = scoring.score_from(t_end, t_total, counts, rounding)

    row = sessionio.ReportRow(
        level=config.level,
        t_end=t_end,
        time_bonus=None if t_total is None else breakdown.time_bonus,
        counts=tuple(counts),
        gesture_sum=breakdown.gesture_sum,
        weighted_sum=breakdown.weighted_sum,
        final=breakdown.final,
        source="classified" if model else "ground_truth",
    )
    print(sessionio.render_report([row], fmt=args.format), end="")
    if not session.completed:
        print("note: session unfinished; no time bonus applied")
    print(f"rewards: base={breakdown.reward_base} muscle={breakdown.reward_muscle}")
    return 0


def _report(args) -> int:
    rows = []
    if args.reference:
        rows.extend(sessionio.reference_report_rows())
    model = network_mod.load_model(args.model) if args.model else None
    for log in args.logs:
        config, seed, events = sessionio.ingest_log(log)
        counts = sessionio.pipeline_counts(events, model, args.frames_dir)
        session = engine.replay(config, seed, events)
        t_total = config.t_total if session.completed else None
        t_end = session.t_end if session.completed else (
            events[-1].timestamp if events else 0.0
        )
        breakdown = scoring.score_from(t_end, t_total, counts, config.rounding)
        rows.append(
            sessionio.ReportRow(
                level=config.level,
                t_end=t_end,
                time_bonus=None if t_total is None else breakdown.time_bonus,
                counts=tuple(counts),
                gesture_sum=breakdown.gesture_sum,
                weighted_sum=breakdown.weighted_sum,
                final=breakdown.final,
                source="classified" if model else "ground_truth",
            )
        )
    print(sessionio.render_report(rows, fmt=args.format), end="")
    return 0


def _serve(args) -> int:
    from .service import run_server

    static = Path(args.static) if args.static else None
    print(f"serving on http://{args.bind} (ctrl-c to stop)")
    run_server(bind=args.bind, data_dir=sessionio.data_dir(), static_dir=static)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trymove")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a puzzle file")
    p.add_argument("--level", choices=engine.LEVELS)
    p.add_argument("--size", type=int)
    p.add_argument("--pieces", type=int)
    p.add_argument("--fakes", type=int, default=None)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_gen)

    p = sub.add_parser("solve", help="emit a scripted solution event log")
    p.add_argument("--level", choices=engine.LEVELS, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--dt", type=float, default=2.0)
    p.add_argument("--out")
    p.set_defaults(func=_solve)

    p = sub.add_parser("play", help="replay a scripted event file, write log + frames")
    p.add_argument("--script", required=True)
    p.add_argument("--out")
    p.add_argument("--frames-dir")
    p.set_defaults(func=_play)

    p = sub.add_parser("train", help="train the gesture classifier")
    p.add_argument("--out")
    p.add_argument("--per-class", type=int, default=TRAIN_FRAMES_PER_CLASS)
    p.add_argument("--epochs", type=int, default=10)
    p.add_argument("--lr", type=float, default=0.05)
    p.add_argument("--batch", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_train)

    p = sub.add_parser("eval", help="evaluate a model on held-out frames")
    p.add_argument("--model", required=True)
    p.add_argument("--per-class", type=int, default=EVAL_FRAMES_PER_CLASS)
    p.add_argument("--out")
    p.set_defaults(func=_eval)

    p = sub.add_parser("score", help="score a session log")
    p.add_argument("--log", required=True)
    p.add_argument("--model")
    p.add_argument("--frames-dir")
    p.add_argument("--rounding", choices=scoring.ROUNDING_MODES)
    p.add_argument("--t-total-override", type=float, dest="t_total_override")
    p.add_argument("--format", choices=("table", "csv"), default="table")
    p.set_defaults(func=_score)

    p = sub.add_parser("report", help="render a score table from session logs")
    p.add_argument("--logs", nargs="*", default=[])
    p.add_argument("--model")
    p.add_argument("--frames-dir")
    p.add_argument("--reference", action="store_true",
                   help="include the calibration reference rows")
    p.add_argument("--format", choices=("table", "csv"), default="table")
    p.set_defaults(func=_report)

    p = sub.add_parser("serve", help="start the play service")
    p.add_argument("--bind", default="127.0.0.1:7463")
    p.add_argument("--static", help="directory with the web console build")
    p.set_defaults(func=_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, IOError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
