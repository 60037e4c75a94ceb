"""HTTP facade over engine sessions.

The server owns all state; clients post events and render the returned
view.  Sessions are keyed by opaque ids, serialized per session with a
lock, and expire after a configurable idle time measured on an injectable
monotonic clock (tests fast-forward it).
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .engine import Mode, Session, Stage, new_session
from .errors import KanapadError, NoMatchError, StateError
from .layout import KeypadLayout
from .lexicon import KeyTrie

DEFAULT_TTL_SECONDS = 15 * 60

_EVENT_TYPES = {"digit", "select", "convert", "commit", "backspace", "advance", "mode"}
_EVENT_KEYS = set("0123456789*#")


def state_view(session: Session) -> dict:
    """The JSON shape clients render; field names are part of the contract."""
    if session.mode is Mode.MULTITAP:
        stage = "multitap"
    else:
        stage = session.stage.value
    forms: list[str] = []
    if session.mode is Mode.DISAMBIGUATION and session.cursor is not None:
        forms = session.form_ring()
    return {
        "committed": session.committed,
        "pending": session.pending_display,
        "candidates": [
            {
                "reading": c.reading,
                "source": c.source.value,
                "frequency": c.frequency,
            }
            for c in session.candidates
        ],
        "cursor": session.cursor,
        "stage": stage,
        "formCursor": session.form_cursor if session.stage is Stage.CYCLING_FORM else None,
        "forms": forms,
    }


@dataclass
class _Handle:
    session: Session
    last_activity: float
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """Sessions by id, with idle expiry and per-session serialization."""

    def __init__(
        self,
        trie: KeyTrie,
        layout: KeypadLayout,
        clock=time.monotonic,
        ttl: float = DEFAULT_TTL_SECONDS,
    ):
        self.trie = trie
        self.layout = layout
        self.clock = clock
        self.ttl = ttl
        self._table: dict[str, _Handle] = {}
        self._lock = threading.Lock()

    def create(self, mode: Mode) -> str:
        session_id = uuid.uuid4().hex
        handle = _Handle(new_session(self.trie, self.layout, mode), self.clock())
        with self._lock:
            self._sweep()
            self._table[session_id] = handle
        return session_id

    def _sweep(self) -> None:
        now = self.clock()
        dead = [sid for sid, h in self._table.items() if now - h.last_activity > self.ttl]
        for sid in dead:
            del self._table[sid]

    def _acquire(self, session_id: str) -> _Handle:
        with self._lock:
            self._sweep()
            handle = self._table.get(session_id)
            if handle is None:
                raise KeyError(session_id)
            handle.last_activity = self.clock()
            return handle

    def view(self, session_id: str) -> dict:
        handle = self._acquire(session_id)
        with handle.lock:
            return state_view(handle.session)

    def apply(self, session_id: str, event: tuple[str, ...]) -> dict:
        handle = self._acquire(session_id)
        with handle.lock:
            handle.session.apply(event)
            return state_view(handle.session)

    def delete(self, session_id: str) -> bool:
        with self._lock:
            self._sweep()
            return self._table.pop(session_id, None) is not None


class CreateBody(BaseModel):
    mode: str = Mode.DISAMBIGUATION.value


class EventBody(BaseModel):
    type: str
    key: str | None = None


def create_app(
    trie: KeyTrie,
    layout: KeypadLayout,
    clock=time.monotonic,
    ttl: float = DEFAULT_TTL_SECONDS,
) -> FastAPI:
    """Build the application around one compiled index."""
    app = FastAPI(title="kanapad")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(trie, layout, clock=clock, ttl=ttl)
    app.state.store = store

    def _get_handle_view(session_id: str) -> dict:
        try:
            return store.view(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="no such session")

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateBody | None = None) -> dict:
        mode_name = body.mode if body is not None else Mode.DISAMBIGUATION.value
        try:
            mode = Mode(mode_name)
        except ValueError:
            raise HTTPException(status_code=400, detail=f"unknown mode {mode_name!r}")
        return {"id": store.create(mode)}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        return _get_handle_view(session_id)

    @app.post("/sessions/{session_id}/events")
    def post_event(session_id: str, body: EventBody) -> dict:
        if body.type not in _EVENT_TYPES:
            raise HTTPException(status_code=400, detail=f"unknown event type {body.type!r}")
        if body.type == "digit":
            if body.key is None or body.key not in _EVENT_KEYS:
                raise HTTPException(status_code=400, detail=f"bad key {body.key!r}")
            event: tuple[str, ...] = ("digit", body.key)
        else:
            if body.key is not None:
                raise HTTPException(
                    status_code=400, detail=f"{body.type} takes no key"
                )
            event = (body.type,)
        try:
            return store.apply(session_id, event)
        except KeyError:
            raise HTTPException(status_code=404, detail="no such session")
        except (NoMatchError, StateError) as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        except KanapadError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    @app.delete("/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str) -> None:
        if not store.delete(session_id):
            raise HTTPException(status_code=404, detail="no such session")

    return app
