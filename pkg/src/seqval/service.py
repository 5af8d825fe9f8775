"""Local HTTP/JSON facade over the valuation engine.

Sessions are in-memory (optionally snapshotted to a state directory); each
session owns a base sequence and its model.  By default the model is rebuilt
on every edit; with ``freeze_model`` the model from the first valid base is
kept for all later edits.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response

from .board import (
    BoardConfig,
    NotationError,
    PositionSequence,
    all_fields,
    format_position,
    parse_position,
    parse_sequence,
)
from .featurebank import GeneralSequenceConfig, PoolConfig, ScoringMode
from .valuation import ValuationModel, build_model, rank_continuations

_CONFIG_KEYS = {
    "board_size",
    "pool_size",
    "bins_k",
    "epsilon",
    "scoring",
    "seed",
    "general_seed",
    "general_length",
    "freeze_model",
}


class ConfigError(ValueError):
    pass


@dataclass
class Session:
    id: str
    board: BoardConfig
    pool: PoolConfig
    general: GeneralSequenceConfig
    freeze_model: bool
    base: PositionSequence
    model: ValuationModel | None = None
    created: float = field(default_factory=time.time)
    updated: float = field(default_factory=time.time)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def config_echo(self) -> dict:
        return {
            "board_size": self.board.size,
            "pool_size": self.pool.pool_size,
            "bins_k": self.pool.bins_k,
            "epsilon": self.pool.epsilon,
            "scoring": self.pool.scoring.value,
            "seed": self.pool.seed,
            "general_seed": self.general.seed,
            "general_length": self.general.length,
            "freeze_model": self.freeze_model,
        }


def _make_session(overrides: dict) -> Session:
    unknown = set(overrides) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config field: {sorted(unknown)[0]}")
    try:
        board = BoardConfig(int(overrides.get("board_size", 12)))
        pool = PoolConfig(
            pool_size=int(overrides.get("pool_size", 200)),
            seed=int(overrides.get("seed", 0)),
            bins_k=int(overrides.get("bins_k", 8)),
            epsilon=float(overrides.get("epsilon", 0.01)),
            scoring=ScoringMode(overrides.get("scoring", "log")),
        )
        general = GeneralSequenceConfig(
            length=int(overrides.get("general_length", 1000)),
            seed=int(overrides.get("general_seed", 0)),
            board=board,
        )
        freeze = bool(overrides.get("freeze_model", False))
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc
    return Session(
        id=uuid.uuid4().hex,
        board=board,
        pool=pool,
        general=general,
        freeze_model=freeze,
        base=PositionSequence((), board),
    )


def _error(status: int, error: str, detail: str) -> JSONResponse:
    return JSONResponse({"error": error, "detail": detail}, status_code=status)


def _heatmap(session: Session, top: int) -> dict:
    ranking = rank_continuations(session.model, session.base)
    by_pos = {(r.position.col, r.position.row): r for r in ranking}
    cells = [
        {
            "field": format_position(p),
            "col": p.col,
            "row": p.row,
            "value": by_pos[(p.col, p.row)].value,
            "rank": by_pos[(p.col, p.row)].rank,
        }
        for p in all_fields(session.board)
    ]
    return {
        "session": session.id,
        "board_size": session.board.size,
        "sequence": [format_position(p) for p in session.base],
        "cells": cells,
        "top": [
            {"field": format_position(r.position), "value": r.value, "rank": r.rank}
            for r in ranking[:top]
        ],
    }


def create_app(state_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="seqval service")
    # the browser UI may be served from a different origin (file or dev server)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    sessions: dict[str, Session] = {}
    state_path = Path(state_dir) if state_dir else None

    def _snapshot(session: Session) -> None:
        if state_path is None:
            return
        state_path.mkdir(parents=True, exist_ok=True)
        payload = {
            "id": session.id,
            "config": session.config_echo(),
            "sequence": [format_position(p) for p in session.base],
        }
        (state_path / f"{session.id}.json").write_text(json.dumps(payload, sort_keys=True))

    def _load_snapshots() -> None:
        if state_path is None or not state_path.is_dir():
            return
        for path in sorted(state_path.glob("*.json")):
            try:
                payload = json.loads(path.read_text())
                cfg = payload["config"]
                session = _make_session({k: cfg[k] for k in cfg if k in _CONFIG_KEYS})
                session.id = payload["id"]
                session.base = parse_sequence(payload["sequence"], session.board)
                if len(session.base) >= 2:
                    session.model = build_model(session.base, session.pool, session.general)
                sessions[session.id] = session
            except (KeyError, ValueError, json.JSONDecodeError):
                continue

    _load_snapshots()

    async def _body(request: Request) -> dict:
        raw = await request.body()
        if not raw:
            return {}
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON body: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("body must be a JSON object")
        return data

    def _rebuild(session: Session) -> None:
        if session.freeze_model and session.model is not None:
            return
        session.model = build_model(session.base, session.pool, session.general)

    def _set_sequence(session: Session, positions) -> JSONResponse | dict:
        if not isinstance(positions, list):
            return _error(400, "bad_request", "positions must be a list of notation strings")
        try:
            seq = parse_sequence([str(p) for p in positions], session.board)
        except NotationError as exc:
            return _error(400, "parse_error", str(exc))
        if len(seq) < 2:
            return _error(422, "sequence_too_short", "sequence too short: need at least 2 positions")
        session.base = seq
        _rebuild(session)
        session.updated = time.time()
        _snapshot(session)
        return _heatmap(session, top=5)

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        try:
            overrides = await _body(request)
            session = _make_session(overrides)
        except ConfigError as exc:
            return _error(400, "invalid_config", str(exc))
        sessions[session.id] = session
        _snapshot(session)
        return JSONResponse(
            {"id": session.id, "config": session.config_echo()}, status_code=201
        )

    @app.get("/sessions/{session_id}")
    async def get_session(session_id: str):
        session = sessions.get(session_id)
        if session is None:
            return _error(404, "not_found", f"no session {session_id}")
        return {
            "id": session.id,
            "config": session.config_echo(),
            "sequence": [format_position(p) for p in session.base],
            "created": session.created,
            "updated": session.updated,
        }

    @app.put("/sessions/{session_id}/sequence")
    async def put_sequence(session_id: str, request: Request):
        session = sessions.get(session_id)
        if session is None:
            return _error(404, "not_found", f"no session {session_id}")
        try:
            body = await _body(request)
        except ConfigError as exc:
            return _error(400, "bad_request", str(exc))
        with session.lock:
            return _set_sequence(session, body.get("positions"))

    @app.post("/sessions/{session_id}/accept")
    async def accept(session_id: str, request: Request):
        session = sessions.get(session_id)
        if session is None:
            return _error(404, "not_found", f"no session {session_id}")
        try:
            body = await _body(request)
        except ConfigError as exc:
            return _error(400, "bad_request", str(exc))
        field_text = body.get("field")
        if not isinstance(field_text, str):
            return _error(400, "bad_request", "field must be a notation string")
        with session.lock:
            try:
                pos = parse_position(field_text, session.board)
            except NotationError as exc:
                return _error(400, "parse_error", str(exc))
            session.base = session.base.append(pos)
            if len(session.base) < 2:
                return _error(
                    422, "sequence_too_short", "sequence too short: need at least 2 positions"
                )
            _rebuild(session)
            session.updated = time.time()
            _snapshot(session)
            return _heatmap(session, top=5)

    @app.get("/sessions/{session_id}/heatmap")
    async def heatmap(session_id: str, top: int = 5):
        session = sessions.get(session_id)
        if session is None:
            return _error(404, "not_found", f"no session {session_id}")
        with session.lock:
            if session.model is None:
                return _error(
                    422, "sequence_too_short", "sequence too short: need at least 2 positions"
                )
            return _heatmap(session, top=top)

    @app.delete("/sessions/{session_id}", status_code=204)
    async def delete_session(session_id: str):
        session = sessions.pop(session_id, None)
        if session is None:
            return _error(404, "not_found", f"no session {session_id}")
        if state_path is not None:
            (state_path / f"{session_id}.json").unlink(missing_ok=True)
        return Response(status_code=204)

    return app
