"""Event-sourced play session state machine.

A session owns a generated puzzle, a pose per piece, and an append-only
gesture event log. Applying an event always logs and counts it (every
gesture earns score); the game effect depends on the gesture class:

    ga            tap: select the named piece (no piece: clear selection)
    gb / gc / gd  grasp the selected piece (gb: pieces of 3+ cells,
                  gc: 1-2 cells, gd: any size)
    g5 / g6       translate the carried piece by the event's delta
    g7 / g8       nudge the carried piece one cell up / down (z axis)
    ge / gf       rotate the carried piece by the event's rotation delta
    g9            open hand: release; placing happens when the piece's
                  cells coincide exactly with its target cells
    g10           close hand: re-confirm grip, no spatial effect
    g1 .. g4      locomotion, logged only

Sessions are single-writer: events must be applied serially in timestamp
order. Replaying a log against a fresh session with the same config and
seed reproduces the state bit for bit.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .geometry import compose, invert, normalize_cells, rotate
from .puzzlegen import Piece, PuzzleSpec, cells_at_pose, generate_puzzle, puzzle_document
from .scoring import ScoreBreakdown, final_score
from .taxonomy import GestureClass, canonical_order

SNAPSHOT_SCHEMA = "trymove-snapshot/1"

LEVELS = ("guidance", "easy", "middle", "difficult")

FRAME_BUDGETS = {"guidance": 50, "easy": 90, "middle": 120, "difficult": 180}
TIME_TOTALS = {"guidance": None, "easy": 240.0, "middle": 480.0, "difficult": 600.0}

# Grid size / piece count / fake count per level. Sized so a full scripted
# solve stays within the level's frame budget (difficult tops out at 90
# solver gestures against a budget of 180).
_LEVEL_SHAPES = {
    "guidance": (2, 2, 0),
    "easy": (3, 3, 1),
    "middle": (3, 5, 2),
    "difficult": (3, 6, 4),
}


class EngineError(ValueError):
    pass


class SessionClosedError(EngineError):
    pass


class EventOrderError(EngineError):
    pass


class UnknownPieceError(EngineError):
    pass


class HintUnavailableError(EngineError):
    pass


@dataclass(frozen=True)
class DifficultyConfig:
    level: str
    grid_size: int
    requested_pieces: int
    fake_count: int
    t_total: float | None
    frame_budget: int
    rounding: str = "half-up"

    def __post_init__(self):
        if self.level not in LEVELS:
            raise EngineError(f"unknown level {self.level!r}; expected one of {LEVELS}")
        if self.frame_budget != FRAME_BUDGETS[self.level]:
            raise EngineError(
                f"{self.level} sessions capture {FRAME_BUDGETS[self.level]} frames, "
                f"got budget {self.frame_budget}"
            )
        if self.t_total != TIME_TOTALS[self.level]:
            raise EngineError(
                f"{self.level} time budget is {TIME_TOTALS[self.level]}, got {self.t_total}"
            )


def difficulty_config(level: str) -> DifficultyConfig:
    if level not in _LEVEL_SHAPES:
        raise EngineError(f"unknown level {level!r}; expected one of {LEVELS}")
    size, pieces, fakes = _LEVEL_SHAPES[level]
    return DifficultyConfig(
        level=level,
        grid_size=size,
        requested_pieces=pieces,
        fake_count=fakes,
        t_total=TIME_TOTALS[level],
        frame_budget=FRAME_BUDGETS[level],
    )


@dataclass(frozen=True)
class GestureEvent:
    timestamp: float
    gesture: GestureClass
    target_piece: int | None = None
    translation: tuple[int, int, int] | None = None
    rotation: int | None = None
    frame_ref: str | None = None


@dataclass
class PiecePose:
    origin: tuple[int, int, int]
    rotation: int
    placed: bool = False


@dataclass(frozen=True)
class Outcome:
    accepted: bool
    effect: str
    score_so_far: ScoreBreakdown
    frame_captured: bool = False


@dataclass(frozen=True)
class Hint:
    piece_id: int
    remaining_cells: tuple[tuple[int, int, int], ...]
    gesture: GestureClass
    translation: tuple[int, int, int] | None = None
    rotation: int | None = None


@dataclass
class Session:
    id: str
    config: DifficultyConfig
    seed: int
    puzzle: PuzzleSpec
    poses: dict[int, PiecePose]
    carried: int | None = None
    selected: int | None = None
    event_log: list[GestureEvent] = field(default_factory=list)
    counts: list[int] = field(default_factory=lambda: [0] * 16)
    frames_captured: int = 0
    t_end: float | None = None
    completed: bool = False


def new_session(config: DifficultyConfig, seed: int) -> Session:
    puzzle = generate_puzzle(
        config.grid_size, config.requested_pieces, seed, config.fake_count
    )
    poses = {
        piece.id: PiecePose(origin=piece.spawn_origin, rotation=piece.spawn_rotation)
        for piece in puzzle.all_pieces
    }
    return Session(
        id=f"{config.level}-{seed}",
        config=config,
        seed=seed,
        puzzle=puzzle,
        poses=poses,
    )


def required_origin(piece: Piece, rotation: int) -> tuple[int, int, int] | None:
    """Origin that drops the rotated piece exactly onto its target cells.

    None when the rotation does not map the piece's shape onto its target
    orientation. Alignment matches bounding-box min corners, which is the
    unique candidate translation between equal normalized cell sets.
    """
    tx, ty, tz = piece.target_origin
    rotated = [rotate(rotation, (x - tx, y - ty, z - tz)) for x, y, z in piece.cells]
    if normalize_cells(rotated) != normalize_cells(piece.cells):
        return None
    rmin = (min(c[0] for c in rotated), min(c[1] for c in rotated), min(c[2] for c in rotated))
    tmin = (
        min(c[0] for c in piece.cells),
        min(c[1] for c in piece.cells),
        min(c[2] for c in piece.cells),
    )
    return (tmin[0] - rmin[0], tmin[1] - rmin[1], tmin[2] - rmin[2])


def _grasp_allows(gesture: GestureClass, piece: Piece) -> bool:
    if gesture is GestureClass.GB:
        return len(piece.cells) >= 3
    if gesture is GestureClass.GC:
        return len(piece.cells) <= 2
    return True  # gd carries any piece


_LOCOMOTION = {GestureClass.G1, GestureClass.G2, GestureClass.G3, GestureClass.G4}
_GRASPS = {GestureClass.GB, GestureClass.GC, GestureClass.GD}
_TRANSLATES = {GestureClass.G5, GestureClass.G6}
_ROTATES = {GestureClass.GE, GestureClass.GF}


def apply_event(session: Session, event: GestureEvent) -> Outcome:
    """Apply one gesture event; the event is logged and counted regardless
    of its game effect. Raises instead of logging only for contract
    violations: closed session, time running backwards, unknown piece ids.
    """
    if session.completed:
        raise SessionClosedError(f"session {session.id} already completed")
    if event.timestamp < 0:
        raise EventOrderError(f"negative timestamp {event.timestamp}")
    if session.event_log and event.timestamp < session.event_log[-1].timestamp:
        raise EventOrderError(
            f"timestamp {event.timestamp} precedes last event "
            f"({session.event_log[-1].timestamp})"
        )
    if event.target_piece is not None and event.target_piece not in session.poses:
        raise UnknownPieceError(f"no piece with id {event.target_piece}")
    if event.rotation is not None and not 0 <= event.rotation < 24:
        raise EngineError(f"rotation index {event.rotation} outside 0..23")

    effect = _dispatch(session, event)

    captured = (
        event.frame_ref is not None
        and session.frames_captured < session.config.frame_budget
    )
    if captured:
        session.frames_captured += 1
        stored = event
    else:
        stored = replace(event, frame_ref=None) if event.frame_ref else event
    session.event_log.append(stored)
    session.counts[event.gesture.ordinal] += 1

    t_now = session.t_end if session.completed else event.timestamp
    score = final_score(t_now, session.config, session.counts)
    return Outcome(accepted=True, effect=effect, score_so_far=score, frame_captured=captured)


def _dispatch(session: Session, event: GestureEvent) -> str:
    gesture = event.gesture

    if gesture in _LOCOMOTION:
        return "logged"

    if gesture is GestureClass.GA:
        if event.target_piece is None:
            session.selected = None
            return "deselected"
        session.selected = event.target_piece
        return "selected"

    if gesture in _GRASPS:
        if session.carried is not None:
            return "already_carrying"
        if session.selected is None:
            return "no_selection"
        piece = session.puzzle.piece_by_id(session.selected)
        if session.poses[piece.id].placed:
            return "already_placed"
        if not _grasp_allows(gesture, piece):
            return "wrong_grasp"
        session.carried = piece.id
        return "grasped"

    if gesture in _TRANSLATES:
        if session.carried is None:
            return "no_piece"
        if event.translation is None:
            return "no_delta"
        pose = session.poses[session.carried]
        dx, dy, dz = event.translation
        pose.origin = (pose.origin[0] + dx, pose.origin[1] + dy, pose.origin[2] + dz)
        return "moved"

    if gesture is GestureClass.G7 or gesture is GestureClass.G8:
        if session.carried is None:
            return "no_piece"
        pose = session.poses[session.carried]
        dz = 1 if gesture is GestureClass.G7 else -1
        pose.origin = (pose.origin[0], pose.origin[1], pose.origin[2] + dz)
        return "nudged"

    if gesture in _ROTATES:
        if session.carried is None:
            return "no_piece"
        if event.rotation is None:
            return "no_delta"
        pose = session.poses[session.carried]
        pose.rotation = compose(event.rotation, pose.rotation)
        return "rotated"

    if gesture is GestureClass.G9:
        if session.carried is None:
            return "no_piece"
        piece = session.puzzle.piece_by_id(session.carried)
        pose = session.poses[piece.id]
        session.carried = None
        if piece.fake:
            return "rejected_fake"
        if cells_at_pose(piece, pose.origin, pose.rotation) == set(piece.cells):
            pose.placed = True
            if all(session.poses[p.id].placed for p in session.puzzle.pieces):
                session.completed = True
                session.t_end = event.timestamp
            return "placed"
        return "dropped"

    if gesture is GestureClass.G10:
        return "grip_confirmed" if session.carried is not None else "no_piece"

    raise EngineError(f"unhandled gesture {gesture}")  # pragma: no cover


def current_hint(session: Session) -> Hint:
    """Next instructed step for guidance play: work the lowest unplaced
    piece through tap, grasp, rotate (when misoriented), move, release.
    """
    if session.config.level != "guidance":
        raise HintUnavailableError(f"hints are a guidance feature, not {session.config.level}")
    if session.completed:
        raise HintUnavailableError("session already completed")
    target = next(p for p in session.puzzle.pieces if not session.poses[p.id].placed)
    cells = tuple(sorted(target.cells))

    if session.carried is not None and session.carried != target.id:
        return Hint(target.id, cells, GestureClass.G9)
    if session.carried == target.id:
        pose = session.poses[target.id]
        aligned_origin = required_origin(target, pose.rotation)
        if aligned_origin is None:
            return Hint(target.id, cells, GestureClass.GE, rotation=invert(pose.rotation))
        if aligned_origin == pose.origin:
            return Hint(target.id, cells, GestureClass.G9)
        delta = tuple(a - b for a, b in zip(aligned_origin, pose.origin))
        return Hint(target.id, cells, GestureClass.G5, translation=delta)
    if session.selected == target.id:
        grasp = GestureClass.GC if len(target.cells) <= 2 else GestureClass.GB
        return Hint(target.id, cells, grasp)
    return Hint(target.id, cells, GestureClass.GA)


def script_solution(
    config: DifficultyConfig, seed: int, dt: float = 2.0
) -> tuple[Session, list[GestureEvent]]:
    """Drive a fresh session to completion; returns it with its event log.

    The script works each real piece in id order: tap, pinch-grasp, rotate
    back to the spawn-neutral orientation for multi-cube pieces, translate
    onto the target cells, release. Deterministic for a given (config, seed).
    """
    session = new_session(config, seed)
    t = 0.0

    def emit(gesture: GestureClass, **kwargs) -> Outcome:
        nonlocal t
        t = round(t + dt, 9)
        return apply_event(session, GestureEvent(timestamp=t, gesture=gesture, **kwargs))

    for piece in session.puzzle.pieces:
        emit(GestureClass.GA, target_piece=piece.id)
        emit(GestureClass.GC)
        if len(piece.cells) > 1:
            emit(GestureClass.GE, rotation=invert(session.poses[piece.id].rotation))
        origin = session.poses[piece.id].origin
        goal = required_origin(piece, session.poses[piece.id].rotation)
        delta = (goal[0] - origin[0], goal[1] - origin[1], goal[2] - origin[2])
        emit(GestureClass.G5, translation=delta)
        outcome = emit(GestureClass.G9)
        assert outcome.effect == "placed", f"piece {piece.id} failed to place"
    assert session.completed
    return session, list(session.event_log)


def replay(config: DifficultyConfig, seed: int, events) -> Session:
    session = new_session(config, seed)
    for event in events:
        apply_event(session, event)
    return session


def event_document(event: GestureEvent) -> dict:
    doc: dict = {"timestamp": event.timestamp, "class": event.gesture.code}
    if event.target_piece is not None:
        doc["target_piece"] = event.target_piece
    if event.translation is not None or event.rotation is not None:
        delta: dict = {}
        if event.translation is not None:
            delta["translation"] = list(event.translation)
        if event.rotation is not None:
            delta["rotation"] = event.rotation
        doc["pose_delta"] = delta
    if event.frame_ref is not None:
        doc["frame_ref"] = event.frame_ref
    return doc


def event_from_document(doc: dict) -> GestureEvent:
    delta = doc.get("pose_delta") or {}
    translation = delta.get("translation")
    return GestureEvent(
        timestamp=float(doc["timestamp"]),
        gesture=GestureClass(doc["class"]),
        target_piece=doc.get("target_piece"),
        translation=tuple(translation) if translation is not None else None,
        rotation=delta.get("rotation"),
        frame_ref=doc.get("frame_ref"),
    )


def config_document(config: DifficultyConfig) -> dict:
    return {
        "level": config.level,
        "grid_size": config.grid_size,
        "requested_pieces": config.requested_pieces,
        "fake_count": config.fake_count,
        "t_total": config.t_total,
        "frame_budget": config.frame_budget,
        "rounding": config.rounding,
    }


def config_from_document(doc: dict) -> DifficultyConfig:
    return DifficultyConfig(
        level=doc["level"],
        grid_size=doc["grid_size"],
        requested_pieces=doc["requested_pieces"],
        fake_count=doc["fake_count"],
        t_total=doc["t_total"],
        frame_budget=doc["frame_budget"],
        rounding=doc.get("rounding", "half-up"),
    )


def snapshot(session: Session) -> dict:
    """Complete state document; restore_session resumes play identically."""
    return {
        "version": SNAPSHOT_SCHEMA,
        "id": session.id,
        "seed": session.seed,
        "config": config_document(session.config),
        "puzzle": puzzle_document(session.puzzle),
        "poses": {
            str(pid): {
                "origin": list(pose.origin),
                "rotation": pose.rotation,
                "placed": pose.placed,
            }
            for pid, pose in session.poses.items()
        },
        "carried": session.carried,
        "selected": session.selected,
        "counts": list(session.counts),
        "frames_captured": session.frames_captured,
        "t_end": session.t_end,
        "completed": session.completed,
        "events": [event_document(e) for e in session.event_log],
    }


def restore_session(doc: dict) -> Session:
    if doc.get("version") != SNAPSHOT_SCHEMA:
        raise EngineError(f"unsupported snapshot version {doc.get('version')!r}")
    puzzle_doc = doc["puzzle"]
    pieces, fakes = [], []
    for entry in puzzle_doc["pieces"]:
        piece = Piece(
            id=entry["id"],
            cells=tuple(tuple(c) for c in entry["cells"]),
            target_origin=tuple(entry["target_origin"]),
            spawn_origin=tuple(entry["spawn_origin"]) if entry["spawn_origin"] else None,
            spawn_rotation=entry["spawn_rotation"],
            fake=entry["fake"],
        )
        (fakes if piece.fake else pieces).append(piece)
    puzzle = PuzzleSpec(
        size=puzzle_doc["size"],
        requested_pieces=puzzle_doc["requested_pieces"],
        seed=puzzle_doc["seed"],
        fake_count=puzzle_doc["fake_count"],
        attempts_exhausted=puzzle_doc["attempts_exhausted"],
        grid=list(puzzle_doc["grid"]),
        pieces=pieces,
        fakes=fakes,
    )
    return Session(
        id=doc["id"],
        config=config_from_document(doc["config"]),
        seed=doc["seed"],
        puzzle=puzzle,
        poses={
            int(pid): PiecePose(
                origin=tuple(p["origin"]), rotation=p["rotation"], placed=p["placed"]
            )
            for pid, p in doc["poses"].items()
        },
        carried=doc["carried"],
        selected=doc["selected"],
        counts=list(doc["counts"]),
        frames_captured=doc["frames_captured"],
        t_end=doc["t_end"],
        completed=doc["completed"],
        event_log=[event_from_document(e) for e in doc["events"]],
    )
