"""Local HTTP service exposing session lifecycle, events, score and stream.

Payload schema family "trymove-api/1". One engine session lives behind each
opaque session token; events are applied under a per-session lock, so
concurrent posts serialize cleanly. A server-sent-events stream pushes one
message per applied event to every subscriber. Sessions are in-memory;
logs are written through to the data directory when one is configured.
"""
from __future__ import annotations

import asyncio
import json
import secrets
import time
from dataclasses import asdict
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import FileResponse, PlainTextResponse, StreamingResponse
from pydantic import BaseModel, Field

from .engine import (
    EventOrderError,
    GestureEvent,
    LEVELS,
    Session,
    SessionClosedError,
    UnknownPieceError,
    apply_event,
    config_document,
    current_hint,
    difficulty_config,
    event_document,
    new_session,
    snapshot,
)
from .puzzlegen import puzzle_document
from .scoring import final_score
from .sessionio import SESSION_SCHEMA, write_log
from .taxonomy import InvalidGestureError, parse_label

API_SCHEMA = "trymove-api/1"
DEFAULT_BIND = "127.0.0.1:7463"


class CreateSessionRequest(BaseModel):
    level: str
    seed: int | None = None


class PoseDelta(BaseModel):
    translation: tuple[int, int, int] | None = None
    rotation: int | None = None


class EventRequest(BaseModel):
    gesture: str = Field(alias="class")
    target_piece: int | None = None
    pose_delta: PoseDelta | None = None

    model_config = {"populate_by_name": True}


class SessionBox:
    def __init__(self, session: Session, log_path: Path | None):
        self.session = session
        self.started = time.monotonic()
        self.lock = asyncio.Lock()
        self.queues: list[asyncio.Queue] = []
        self.log_path = log_path

    def elapsed(self) -> float:
        return round(time.monotonic() - self.started, 3)


def _score_doc(breakdown) -> dict:
    return asdict(breakdown)


def _hint_doc(session: Session) -> dict | None:
    if session.config.level != "guidance" or session.completed:
        return None
    hint = current_hint(session)
    return {
        "piece_id": hint.piece_id,
        "remaining_cells": [list(c) for c in hint.remaining_cells],
        "gesture": hint.gesture.code,
        "translation": list(hint.translation) if hint.translation else None,
        "rotation": hint.rotation,
    }


def _live_score(box: SessionBox) -> dict:
    session = box.session
    if session.completed:
        return _score_doc(final_score(session.t_end, session.config, session.counts))
    t_now = box.elapsed()
    if session.event_log:
        t_now = max(t_now, session.event_log[-1].timestamp)
    return _score_doc(final_score(t_now, session.config, session.counts))


def create_app(data_dir: Path | None = None, static_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="trymove service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    boxes: dict[str, SessionBox] = {}

    def box_of(session_id: str) -> SessionBox:
        box = boxes.get(session_id)
        if box is None:
            raise HTTPException(status_code=404, detail=f"no session {session_id}")
        return box

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "api": API_SCHEMA}

    @app.post("/sessions")
    def create_session(request: CreateSessionRequest):
        if request.level not in LEVELS:
            raise HTTPException(
                status_code=422,
                detail=f"unknown level {request.level!r}; valid levels: {', '.join(LEVELS)}",
            )
        seed = request.seed if request.seed is not None else secrets.randbits(48)
        session = new_session(difficulty_config(request.level), seed)
        token = secrets.token_hex(8)
        log_path = None
        if data_dir is not None:
            data_dir.mkdir(parents=True, exist_ok=True)
            log_path = data_dir / f"session-{token}.jsonl"
        boxes[token] = SessionBox(session, log_path)
        response = {
            "api": API_SCHEMA,
            "id": token,
            "seed": seed,
            "config": config_document(session.config),
            "puzzle": puzzle_document(session.puzzle),
        }
        hint = _hint_doc(session)
        if hint is not None:
            response["hint"] = hint
        return response

    @app.get("/sessions/{session_id}")
    def get_state(session_id: str):
        return {"api": API_SCHEMA, "state": snapshot(box_of(session_id).session)}

    @app.get("/sessions/{session_id}/score")
    def get_score(session_id: str):
        box = box_of(session_id)
        return {"api": API_SCHEMA, "score": _live_score(box)}

    @app.get("/sessions/{session_id}/log", response_class=PlainTextResponse)
    def get_log(session_id: str):
        session = box_of(session_id).session
        header = {
            "version": SESSION_SCHEMA,
            "config": config_document(session.config),
            "seed": session.seed,
        }
        lines = [json.dumps(header)]
        lines.extend(json.dumps(event_document(e)) for e in session.event_log)
        return "\n".join(lines) + "\n"

    @app.post("/sessions/{session_id}/events")
    async def post_event(session_id: str, request: EventRequest):
        box = box_of(session_id)
        try:
            gesture = parse_label(request.gesture)
        except InvalidGestureError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        async with box.lock:
            session = box.session
            timestamp = box.elapsed()
            if session.event_log:
                timestamp = max(timestamp, session.event_log[-1].timestamp)
            delta = request.pose_delta or PoseDelta()
            event = GestureEvent(
                timestamp=timestamp,
                gesture=gesture,
                target_piece=request.target_piece,
                translation=delta.translation,
                rotation=delta.rotation,
            )
            try:
                outcome = apply_event(session, event)
            except SessionClosedError as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            except (EventOrderError, UnknownPieceError, ValueError) as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            if box.log_path is not None:
                write_log(box.log_path, session.config, session.seed, session.event_log)
            message = {
                "type": "event",
                "index": len(session.event_log) - 1,
                "event": event_document(event),
                "outcome": {"accepted": outcome.accepted, "effect": outcome.effect},
                "score_so_far": _score_doc(outcome.score_so_far),
                "completed": session.completed,
                "t_end": session.t_end,
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
                "hint": _hint_doc(session),
            }
            for queue in list(box.queues):
                queue.put_nowait(message)
        response = {
            "api": API_SCHEMA,
            "outcome": {
                "accepted": outcome.accepted,
                "effect": outcome.effect,
                "frame_captured": outcome.frame_captured,
            },
            "score_so_far": _score_doc(outcome.score_so_far),
            "completed": session.completed,
            "t_end": session.t_end,
        }
        hint = _hint_doc(session)
        if hint is not None:
            response["hint"] = hint
        return response

    @app.get("/sessions/{session_id}/stream")
    async def stream(session_id: str, request: Request):
        box = box_of(session_id)
        queue: asyncio.Queue = asyncio.Queue()
        box.queues.append(queue)

        async def generate():
            try:
                yield f"data: {json.dumps({'type': 'hello', 'api': API_SCHEMA})}\n\n"
                while True:
                    try:
                        message = await asyncio.wait_for(queue.get(), timeout=0.5)
                    except asyncio.TimeoutError:
                        if await request.is_disconnected():
                            break
                        yield ": keepalive\n\n"
                        continue
                    yield f"data: {json.dumps(message)}\n\n"
            finally:
                if queue in box.queues:
                    box.queues.remove(queue)

        return StreamingResponse(generate(), media_type="text/event-stream")

    if static_dir is not None and static_dir.exists():
        from fastapi.staticfiles import StaticFiles

        index = static_dir / "index.html"
        if index.exists():
            @app.get("/", include_in_schema=False)
            def root():
                return FileResponse(index)

        app.mount("/static", StaticFiles(directory=static_dir), name="static")

    return app


def run_server(bind: str = DEFAULT_BIND, data_dir: Path | None = None,
               static_dir: Path | None = None) -> None:
    import uvicorn

    host, _, port = bind.partition(":")
    uvicorn.run(
        create_app(data_dir=data_dir, static_dir=static_dir),
        host=host or "127.0.0.1",
        port=int(port or 7463),
        log_level="warning",
    )
