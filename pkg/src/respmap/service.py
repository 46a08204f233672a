"""HTTP API for the interactive wizard.

Sessions live as files in a data directory: ``{id}.respmap.json`` holds
the canonical map document (byte-identical to what ``/export`` returns and
what the CLI reads), ``{id}.meta.json`` holds bookkeeping (timestamps,
revision counter, which questionnaire blocks have been answered).  Writes
go to a temp file first and are renamed into place, so a crash mid-write
never leaves a corrupt session behind.

Unanswered slots count as "nobody", which keeps the preview report
computable after every block.  Mutating calls must carry the current
revision in an ``If-Match`` header; stale revisions get 409 and change
nothing.
"""

from __future__ import annotations

import asyncio
import json
import os
import re
import secrets
import tempfile
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import mapdoc, render, rules
from .model import ENGINE_VERSION, MapError, ResponsibilityMap, validate_map

DEFAULT_BIND = "127.0.0.1:8642"
DEFAULT_DATA_DIR = "./respmap-sessions"

_SESSION_ID_RE = re.compile(r"^[A-Za-z0-9_-]{16,64}$")
_ALL_BLOCKS = frozenset({1, 2, 3, 4, 5})


def resolve_bind(bind: str | None = None) -> tuple[str, int]:
    value = bind or os.environ.get("RESPMAP_BIND") or DEFAULT_BIND
    host, _, port = value.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"bind address must look like host:port, got {value!r}")
    return host, int(port)


def resolve_data_dir(data_dir: str | Path | None = None) -> Path:
    value = data_dir or os.environ.get("RESPMAP_DATA_DIR") or DEFAULT_DATA_DIR
    return Path(value)


def _utcnow() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass
class Session:
    session_id: str
    created_at: str
    updated_at: str
    revision: int
    blocks_submitted: frozenset[int]
    map: ResponsibilityMap
    map_bytes: bytes

    @property
    def draft(self) -> bool:
        return self.blocks_submitted != _ALL_BLOCKS


class SessionNotFound(KeyError):
    pass


class SessionStore:
    """File-backed session persistence, one canonical map file per session."""

    def __init__(self, data_dir: Path):
        self.data_dir = data_dir
        self.data_dir.mkdir(parents=True, exist_ok=True)

    def _map_path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.respmap.json"

    def _meta_path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.meta.json"

    def _write_atomic(self, path: Path, payload: bytes) -> None:
        fd, tmp = tempfile.mkstemp(dir=self.data_dir, prefix=path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as handle:
                handle.write(payload)
                handle.flush()
                os.fsync(handle.fileno())
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise

    def create(self, map_: ResponsibilityMap, blocks_submitted: frozenset[int]) -> Session:
        session_id = secrets.token_urlsafe(16)
        now = _utcnow()
        session = Session(
            session_id=session_id,
            created_at=now,
            updated_at=now,
            revision=1,
            blocks_submitted=blocks_submitted,
            map=map_,
            map_bytes=mapdoc.serialize_map(map_),
        )
        self._persist(session)
        return session

    def load(self, session_id: str) -> Session:
        if not _SESSION_ID_RE.fullmatch(session_id):
            raise SessionNotFound(session_id)
        map_path = self._map_path(session_id)
        meta_path = self._meta_path(session_id)
        try:
            map_bytes = map_path.read_bytes()
            meta = json.loads(meta_path.read_text(encoding="utf-8"))
        except (FileNotFoundError, json.JSONDecodeError) as exc:
            raise SessionNotFound(session_id) from exc
        map_ = mapdoc.parse_map(map_bytes)
        return Session(
            session_id=session_id,
            created_at=meta["created_at"],
            updated_at=meta["updated_at"],
            revision=int(meta["revision"]),
            blocks_submitted=frozenset(int(b) for b in meta["blocks_submitted"]),
            map=map_,
            map_bytes=map_bytes,
        )

    def update(self, session: Session, map_: ResponsibilityMap,
               block: int | None = None) -> Session:
        blocks = session.blocks_submitted | ({block} if block else frozenset())
        updated = Session(
            session_id=session.session_id,
            created_at=session.created_at,
            updated_at=_utcnow(),
            revision=session.revision + 1,
            blocks_submitted=blocks,
            map=map_,
            map_bytes=mapdoc.serialize_map(map_),
        )
        self._persist(updated)
        return updated

    def _persist(self, session: Session) -> None:
        self._write_atomic(self._map_path(session.session_id), session.map_bytes)
        meta = {
            "session_id": session.session_id,
            "created_at": session.created_at,
            "updated_at": session.updated_at,
            "revision": session.revision,
            "blocks_submitted": sorted(session.blocks_submitted),
        }
        self._write_atomic(
            self._meta_path(session.session_id),
            (json.dumps(meta, indent=2) + "\n").encode("utf-8"),
        )


def _error_response(status: int, code: str, message: str,
                    issues: tuple = (), **extra) -> JSONResponse:
    body = {"error": {"code": code, "message": message, **extra}}
    if issues:
        body["error"]["issues"] = [
            {"code": i.code, "path": i.path, "message": i.message} for i in issues
        ]
    return JSONResponse(status_code=status, content=body)


def _session_info(session: Session) -> dict:
    return {
        "session_id": session.session_id,
        "created_at": session.created_at,
        "updated_at": session.updated_at,
        "revision": session.revision,
        "blocks_submitted": sorted(session.blocks_submitted),
        "draft": session.draft,
    }


def create_app(data_dir: str | Path | None = None) -> FastAPI:
    store = SessionStore(resolve_data_dir(data_dir))
    locks: dict[str, asyncio.Lock] = {}

    app = FastAPI(title="respmap", version=ENGINE_VERSION, docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"])

    def lock_for(session_id: str) -> asyncio.Lock:
        return locks.setdefault(session_id, asyncio.Lock())

    def structured_report(map_: ResponsibilityMap, locale: str) -> dict:
        report = rules.analyze(map_)
        return json.loads(render.render_report(report, render.STRUCTURED, locale))

    def locale_of(request: Request) -> str | JSONResponse:
        locale = request.query_params.get("locale", render.DEFAULT_LOCALE)
        if locale not in render.CATALOGS:
            return _error_response(400, "unknown-locale", f"no such locale: {locale}")
        return locale

    @app.get("/api/v1/health")
    async def health() -> dict:
        return {"status": "ok", "engine_version": ENGINE_VERSION}

    @app.post("/api/v1/sessions", status_code=201)
    async def create_session(request: Request) -> Response:
        body = await request.body()
        if body.strip():
            try:
                map_, blocks = mapdoc.parse_draft_document(body)
            except MapError as exc:
                return _error_response(400, "invalid-map", "map document rejected",
                                       issues=exc.issues)
        else:
            map_, blocks = mapdoc.parse_draft_document(b"{}")
        session = store.create(map_, blocks)
        return JSONResponse(status_code=201, content=_session_info(session))

    @app.get("/api/v1/sessions/{session_id}")
    async def get_session(session_id: str) -> Response:
        try:
            session = store.load(session_id)
        except SessionNotFound:
            return _error_response(404, "unknown-session", "no such session")
        return JSONResponse(content={
            **_session_info(session),
            "map": mapdoc.map_to_document(session.map),
        })

    @app.put("/api/v1/sessions/{session_id}/blocks/{block}")
    async def put_block(session_id: str, block: int, request: Request) -> Response:
        if block not in _ALL_BLOCKS:
            return _error_response(404, "unknown-block", "block index must be 1-5")
        locale = locale_of(request)
        if isinstance(locale, JSONResponse):
            return locale
        token = request.headers.get("If-Match")
        if token is None:
            return _error_response(
                400, "missing-revision",
                "mutating calls must carry the current revision in If-Match")
        async with lock_for(session_id):
            try:
                session = store.load(session_id)
            except SessionNotFound:
                return _error_response(404, "unknown-session", "no such session")
            if token.strip('"') != str(session.revision):
                return _error_response(
                    409, "stale-revision", "the session changed since you loaded it",
                    current_revision=session.revision)
            try:
                patch = mapdoc.parse_block_payload(block, await request.body())
                current = session.map
                fields = {
                    "title": current.title,
                    "actors": current.actors,
                    "tasks": current.tasks,
                    "responsibilities": current.responsibilities,
                    "authorities": current.authorities,
                    "channels": current.channels,
                    "format_version": current.format_version,
                    "notes": current.notes,
                }
                fields.update(patch)
                new_map = validate_map(**fields)
            except MapError as exc:
                return _error_response(400, "invalid-block", "block payload rejected",
                                       issues=exc.issues)
            session = store.update(session, new_map, block=block)
        return JSONResponse(content={
            **_session_info(session),
            "block": block,
            "report": structured_report(session.map, locale),
        })

    @app.get("/api/v1/sessions/{session_id}/report")
    async def get_report(session_id: str, request: Request) -> Response:
        locale = locale_of(request)
        if isinstance(locale, JSONResponse):
            return locale
        try:
            session = store.load(session_id)
        except SessionNotFound:
            return _error_response(404, "unknown-session", "no such session")
        payload = render.render_report(rules.analyze(session.map), render.STRUCTURED, locale)
        return Response(content=payload, media_type="application/json")

    @app.post("/api/v1/sessions/{session_id}/whatif")
    async def whatif(session_id: str, request: Request) -> Response:
        locale = locale_of(request)
        if isinstance(locale, JSONResponse):
            return locale
        try:
            session = store.load(session_id)
        except SessionNotFound:
            return _error_response(404, "unknown-session", "no such session")
        try:
            delta = mapdoc.parse_map_delta(await request.body())
            report_delta = rules.what_if(session.map, delta)
        except MapError as exc:
            return _error_response(400, "invalid-delta", "what-if delta rejected",
                                   issues=exc.issues)
        payload = render.render_delta(report_delta, render.STRUCTURED, locale)
        return Response(content=payload, media_type="application/json")

    @app.get("/api/v1/sessions/{session_id}/export")
    async def export(session_id: str) -> Response:
        try:
            session = store.load(session_id)
        except SessionNotFound:
            return _error_response(404, "unknown-session", "no such session")
        return Response(
            content=session.map_bytes,
            media_type="application/json",
            headers={"Content-Disposition":
                     f'attachment; filename="{session.session_id}.respmap.json"'},
        )

    return app
