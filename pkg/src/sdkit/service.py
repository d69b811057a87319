"""HTTP JSON service over the session workbench.

Stateless handlers over an in-memory session store; every mutation of a
session is serialized per session id, reads run concurrently, and every
response carries the schema version.  Exposes nothing the CLI cannot do.

Status codes: 400 parse errors, 404 unknown session, 409 wrong data kind,
422 invariant violations.
"""

from __future__ import annotations

import json
import threading
from collections.abc import Callable
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import formats, session as sessions
from .errors import InvariantViolation, ParseError, WrongDataKind
from .formats import SCHEMA_VERSION


class SessionStore:
    """Sessions by id; one writer at a time per session, concurrent readers."""

    def __init__(self) -> None:
        self._sessions: dict[str, sessions.Session] = {}
        self._registry_lock = threading.Lock()
        self._locks: dict[str, threading.Lock] = {}

    def add(self, s: sessions.Session) -> None:
        with self._registry_lock:
            self._sessions[s.id] = s
            self._locks.setdefault(s.id, threading.Lock())

    def get(self, sid: str) -> sessions.Session:
        try:
            return self._sessions[sid]
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown session {sid!r}") from None

    def mutate(
        self, sid: str, fn: Callable[[sessions.Session], sessions.Session]
    ) -> sessions.Session:
        with self._registry_lock:
            lock = self._locks.get(sid)
        if lock is None:
            raise HTTPException(status_code=404, detail=f"unknown session {sid!r}")
        with lock:
            updated = fn(self.get(sid))
            self._sessions[sid] = updated
            return updated


class RefinementIn(BaseModel):
    x: str
    y: str
    value: float


class BookmarkIn(BaseModel):
    name: str
    level: float


def _load_payload(body) -> tuple[formats.LoadedData, dict | None]:
    """Interpret a POST /sessions body: a wrapper with explicit format, or any
    JSON load format directly."""
    if isinstance(body, dict) and "format" in body:
        content = body.get("content")
        if not isinstance(content, str):
            raise ParseError("'content' must hold the document text when 'format' is given")
        phi_star = body.get("phi_star")
        loaded = formats.load_text(
            content, str(body["format"]),
            phi_star=float(phi_star) if phi_star is not None else None,
        )
        weights = body.get("weights")
        return loaded, weights
    return formats.load_text(json.dumps(body)), None


def create_app(console_dir: str | None = None, store: SessionStore | None = None) -> FastAPI:
    app = FastAPI(title="sdkit session service", version="0.1.0")
    app.state.store = store if store is not None else SessionStore()

    @app.exception_handler(ParseError)
    async def _parse_error(request: Request, exc: ParseError) -> JSONResponse:
        return JSONResponse(status_code=400, content=_error_body(exc))

    @app.exception_handler(InvariantViolation)
    async def _invariant(request: Request, exc: InvariantViolation) -> JSONResponse:
        return JSONResponse(status_code=422, content=_error_body(exc))

    @app.exception_handler(WrongDataKind)
    async def _wrong_kind(request: Request, exc: WrongDataKind) -> JSONResponse:
        return JSONResponse(status_code=409, content=_error_body(exc))

    def _error_body(exc: Exception) -> dict:
        return {"schema_version": SCHEMA_VERSION, "error": str(exc)}

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        try:
            body = await request.json()
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON body: {e.msg}") from None
        loaded, weights_raw = _load_payload(body)
        weights = None
        if weights_raw is not None:
            weights = formats.parse_weights(weights_raw, loaded.value.base)
        s = sessions.new_session(loaded, weights)
        app.state.store.add(s)
        return {"schema_version": SCHEMA_VERSION, "id": s.id}

    @app.get("/sessions/{sid}/report")
    async def get_report(sid: str):
        return sessions.analyze(app.state.store.get(sid))

    @app.get("/sessions/{sid}/ladder")
    async def get_ladder(sid: str, level: float | None = None):
        return sessions.ladder_report(app.state.store.get(sid), level)

    @app.post("/sessions/{sid}/refinements", status_code=201)
    async def post_refinement(sid: str, body: RefinementIn):
        updated = app.state.store.mutate(
            sid, lambda s: sessions.apply_refinement(s, body.x, body.y, body.value)
        )
        return sessions.analyze(updated)

    @app.get("/sessions/{sid}/suggestion")
    async def get_suggestion(sid: str):
        pair = sessions.suggest_next_pair(app.state.store.get(sid))
        return {
            "schema_version": SCHEMA_VERSION,
            "pair": list(pair) if pair else None,
        }

    @app.post("/sessions/{sid}/bookmarks", status_code=201)
    async def post_bookmark(sid: str, body: BookmarkIn):
        updated = app.state.store.mutate(
            sid, lambda s: sessions.add_bookmark(s, body.name, body.level)
        )
        return {
            "schema_version": SCHEMA_VERSION,
            "bookmarks": dict(sorted(updated.bookmarks.items())),
        }

    static_dir = Path(console_dir) if console_dir else Path("frontend") / "dist"
    if static_dir.is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="console")

    return app
