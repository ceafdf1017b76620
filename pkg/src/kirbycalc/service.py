"""Session-oriented JSON-over-HTTP interface to the move engine.

Endpoints:

    POST /sessions                  create from {braid}, {script} or {pieces}
    GET  /sessions/{id}             full session document
    POST /sessions/{id}/moves       apply one move document
    POST /sessions/{id}/undo        pop the last move (409 on empty history)
    GET  /sessions/{id}/export      .kmove transcription (text/plain)
    GET  /sessions/{id}/report      the obstruction report (409 if none yet)

Every response carries exact integers only; session state lives in
memory, with an optional snapshot directory written on shutdown and
reloaded on startup.  Each session serializes its commands through a
lock; distinct sessions are independent.
"""

from __future__ import annotations

import json
import os
import threading
import uuid

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from .braid import BraidSyntaxError, parse_braid_word
from .moves import (
    MoveError,
    PieceDecl,
    SessionState,
    apply_move,
    init_from_knot,
    init_from_pieces,
    move_from_doc,
    session_from_doc,
    session_to_doc,
    undo,
)
from .script import (
    ExpectFailure,
    ScriptRunError,
    ScriptSyntaxError,
    export_script,
    run_script_text,
)


class _Store:
    def __init__(self):
        self._sessions: dict[str, SessionState] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()

    def add(self, session: SessionState) -> str:
        session_id = uuid.uuid4().hex[:12]
        with self._guard:
            self._sessions[session_id] = session
            self._locks[session_id] = threading.Lock()
        return session_id

    def restore(self, session_id: str, session: SessionState) -> None:
        with self._guard:
            self._sessions[session_id] = session
            self._locks[session_id] = threading.Lock()

    def get(self, session_id: str) -> SessionState | None:
        return self._sessions.get(session_id)

    def lock(self, session_id: str) -> threading.Lock:
        return self._locks[session_id]

    def replace(self, session_id: str, session: SessionState) -> None:
        self._sessions[session_id] = session

    def items(self):
        return list(self._sessions.items())


def _error(status: int, kind: str, message: str, reason: str | None = None):
    body = {"error": {"kind": kind, "message": message}}
    if reason:
        body["error"]["reason"] = reason
    return JSONResponse(body, status_code=status)


def _document(session_id: str, session: SessionState) -> dict:
    doc = session_to_doc(session)
    doc["id"] = session_id
    base = f"/sessions/{session_id}"
    doc["links"] = {
        "self": base,
        "moves": f"{base}/moves",
        "undo": f"{base}/undo",
        "export": f"{base}/export",
        "report": f"{base}/report",
    }
    return doc


def build_app(snapshot_dir: str | None = None) -> FastAPI:
    from contextlib import asynccontextmanager

    store = _Store()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        if snapshot_dir and os.path.isdir(snapshot_dir):
            for name in sorted(os.listdir(snapshot_dir)):
                if not name.endswith(".json"):
                    continue
                with open(os.path.join(snapshot_dir, name), "r", encoding="utf-8") as fh:
                    doc = json.load(fh)
                store.restore(name[: -len(".json")], session_from_doc(doc))
        yield
        if snapshot_dir:
            os.makedirs(snapshot_dir, exist_ok=True)
            for session_id, session in store.items():
                path = os.path.join(snapshot_dir, f"{session_id}.json")
                with open(path, "w", encoding="utf-8") as fh:
                    json.dump(session_to_doc(session), fh, sort_keys=True)

    app = FastAPI(title="kirbycalc session service", lifespan=lifespan)

    @app.post("/sessions")
    async def create_session(request: Request):
        body = await request.json()
        if not isinstance(body, dict):
            return _error(400, "parse", "request body must be a JSON object")
        try:
            if "braid" in body:
                spec = body["braid"]
                word = parse_braid_word(spec["word"], spec["strands"])
                session = init_from_knot(word)
            elif "script" in body:
                result = run_script_text(body["script"])
                session = result.session
            elif "pieces" in body:
                decls = [
                    PieceDecl(
                        id=p["id"],
                        kind=p["kind"],
                        framing=p["framing"],
                        characteristic=p.get("characteristic", False),
                        strand_count=p.get("strands", 1),
                        word=p.get("word", ""),
                    )
                    for p in body["pieces"]
                ]
                counters = body.get("counters")
                pair = (counters["b2"], counters["sigma"]) if counters else None
                session = init_from_pieces(decls, pair)
            else:
                return _error(
                    400, "parse", "request needs one of: braid, script, pieces"
                )
        except (BraidSyntaxError, ScriptSyntaxError) as err:
            return _error(400, "parse", str(err))
        except (KeyError, TypeError) as err:
            return _error(400, "parse", f"malformed request: {err!r}")
        except ExpectFailure as err:
            return _error(422, "expect", str(err))
        except (MoveError, ScriptRunError) as err:
            return _error(422, "move", str(err), reason=getattr(err, "reason", None))
        except ValueError as err:
            return _error(422, "move", str(err))
        session_id = store.add(session)
        return _document(session_id, session)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        session = store.get(session_id)
        if session is None:
            return _error(404, "not_found", f"no session {session_id}")
        return _document(session_id, session)

    @app.post("/sessions/{session_id}/moves")
    async def post_move(session_id: str, request: Request):
        session = store.get(session_id)
        if session is None:
            return _error(404, "not_found", f"no session {session_id}")
        body = await request.json()
        try:
            move = move_from_doc(body)
        except MoveError as err:
            return _error(400, "parse", str(err), reason=err.reason)
        except (KeyError, TypeError) as err:
            return _error(400, "parse", f"malformed move document: {err!r}")
        with store.lock(session_id):
            session = store.get(session_id)
            try:
                new = apply_move(session, move)
            except (BraidSyntaxError,) as err:
                return _error(422, "move", str(err), reason="bad_braid")
            except MoveError as err:
                return _error(422, "move", str(err), reason=err.reason)
            except ValueError as err:
                return _error(422, "move", str(err))
            store.replace(session_id, new)
        return _document(session_id, new)

    @app.post("/sessions/{session_id}/undo")
    def post_undo(session_id: str):
        session = store.get(session_id)
        if session is None:
            return _error(404, "not_found", f"no session {session_id}")
        with store.lock(session_id):
            session = store.get(session_id)
            try:
                new = undo(session)
            except MoveError as err:
                return _error(409, "undo", str(err), reason=err.reason)
            store.replace(session_id, new)
        return _document(session_id, new)

    @app.get("/sessions/{session_id}/export")
    def get_export(session_id: str):
        session = store.get(session_id)
        if session is None:
            return _error(404, "not_found", f"no session {session_id}")
        return PlainTextResponse(export_script(session))

    @app.get("/sessions/{session_id}/report")
    def get_report(session_id: str):
        session = store.get(session_id)
        if session is None:
            return _error(404, "not_found", f"no session {session_id}")
        if session.report is None:
            return _error(409, "no_report", "session has no obstruction report yet")
        return session.report.to_doc()

    return app
