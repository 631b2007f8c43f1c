"""Session-oriented HTTP service over the engine.

Stateless simple-question answering plus stateful action-sequence
sessions:

- ``GET  /spaces``                 question spaces with their attributes
- ``GET  /automata``               automata with actions and events
- ``POST /query``                  {space, bindings} -> verdict + explanation
- ``POST /sessions``               {automaton} -> fresh session
- ``POST /sessions/{id}/events``   {event, ordinal?} -> new state + advice
- ``GET  /sessions/{id}``          current verdict and trace
- ``GET  /sessions/{id}/log``      exported event log (text)

Sessions live in memory; the engine itself is pure, so each session is
serialized with its own lock and the service can host any number of them
concurrently.  An event post may carry the ordinal the client believes
the session is at: a stale ordinal returns the current state unchanged,
which makes retries idempotent.  Set ``FIQHKIT_SESSION_LOG_DIR`` to also
append every accepted event to a replayable per-session log file.
"""

from __future__ import annotations

import os
import threading
import uuid
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel

from .datafiles import DataRegistry
from .errors import LoadError, MatchError, SessionError
from .fsm import Automaton, SessionState, init_session, step
from .questions import Question
from .rules import match_question


class QueryRequest(BaseModel):
    space: str
    bindings: dict[str, str]
    rules: Optional[str] = None


class SessionCreateRequest(BaseModel):
    automaton: str


class EventRequest(BaseModel):
    event: str
    ordinal: Optional[int] = None


@dataclass
class SessionRecord:
    session_id: str
    automaton_id: str
    state: SessionState
    created: int
    updated: int
    lock: threading.Lock


def _advice_doc(state: SessionState) -> Optional[dict]:
    if state.advice is None:
        return None
    return {
        "kind": state.advice.kind,
        "message": state.advice.message,
        "offending_action": state.advice.offending_action,
        "expected_action": state.advice.expected_action,
    }


def _session_doc(record: SessionRecord) -> dict:
    state = record.state
    return {
        "session_id": record.session_id,
        "automaton": record.automaton_id,
        "status": state.status,
        "ordinal": len(state.performed),
        "credited": list(state.credited),
        "missing": list(state.missing()),
        "expected_action": state.expected_action,
        "enabled_actions": list(state.enabled_actions),
        "advice": _advice_doc(state),
    }


def create_app(data_dir: Optional[Path] = None) -> FastAPI:
    registry = DataRegistry(data_dir)
    sessions: dict[str, SessionRecord] = {}
    sessions_lock = threading.Lock()
    log_dir = os.environ.get("FIQHKIT_SESSION_LOG_DIR")

    app = FastAPI(title="fiqhkit", version="0.1.0")
    # The browser client is served as static files from anywhere.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def get_automaton(automaton_id: str) -> Automaton:
        automaton = registry.automata.get(automaton_id)
        if automaton is None:
            raise HTTPException(status_code=404, detail=f"unknown automaton: {automaton_id}")
        return automaton

    def get_session(session_id: str) -> SessionRecord:
        record = sessions.get(session_id)
        if record is None:
            raise HTTPException(status_code=404, detail=f"unknown session: {session_id}")
        return record

    def append_log(record: SessionRecord, event_id: str) -> None:
        if not log_dir:
            return
        path = Path(log_dir) / f"{record.session_id}.log"
        seq = len(record.state.performed)
        with path.open("a", encoding="utf-8") as fh:
            fh.write(f"{seq} {seq} {event_id}\n")

    @app.get("/spaces")
    def list_spaces() -> list[dict]:
        return [
            {
                "id": space.id,
                "attributes": [
                    {
                        "name": attr.name,
                        "element": space.element_of(attr.name),
                        "values": [
                            {"id": vid, "label": attr.labels.get(vid, vid)}
                            for vid in attr.value_ids
                        ],
                    }
                    for attr in space.attributes
                ],
            }
            for space in registry.spaces.values()
        ]

    @app.get("/automata")
    def list_automata() -> list[dict]:
        return [
            {
                "id": automaton.id,
                "mode": automaton.mode,
                "actions": [
                    {"id": a.id, "label": a.label, "obligatory": a.obligatory}
                    for a in automaton.actions
                ],
                "invalidation_events": [
                    {"id": e.id, "label": e.label, "policy": e.policy}
                    for e in automaton.invalidation_events
                ],
            }
            for automaton in registry.automata.values()
        ]

    @app.post("/query")
    def query(request: QueryRequest) -> dict:
        space = registry.spaces.get(request.space)
        if space is None:
            raise HTTPException(status_code=404, detail=f"unknown space: {request.space}")
        try:
            if request.rules:
                rulebase = registry.rulebases[request.rules]
            else:
                rulebase = registry.rulebase_for_space(space.id)
        except (KeyError, LoadError) as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from None
        try:
            result = match_question(rulebase, Question(request.bindings))
        except (MatchError, LoadError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        return {
            "status": result.status,
            "verdict": result.verdict_label,
            "matched_rules": list(result.matched_rules),
            "explanation": list(result.explanation),
        }

    @app.post("/sessions", status_code=201)
    def create_session(request: SessionCreateRequest) -> dict:
        automaton = get_automaton(request.automaton)
        record = SessionRecord(
            session_id=uuid.uuid4().hex,
            automaton_id=automaton.id,
            state=init_session(automaton),
            created=0,
            updated=0,
            lock=threading.Lock(),
        )
        with sessions_lock:
            sessions[record.session_id] = record
        return _session_doc(record)

    @app.post("/sessions/{session_id}/events")
    def post_event(session_id: str, request: EventRequest) -> dict:
        record = get_session(session_id)
        with record.lock:
            current = len(record.state.performed)
            if request.ordinal is not None:
                if request.ordinal < current:
                    # Stale retry: the event was already applied.
                    return _session_doc(record)
                if request.ordinal > current:
                    raise HTTPException(
                        status_code=409,
                        detail=f"ordinal {request.ordinal} ahead of session at {current}",
                    )
            try:
                record.state = step(record.state, request.event)
            except SessionError as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from None
            record.updated = len(record.state.performed)
            append_log(record, request.event)
            return _session_doc(record)

    @app.get("/sessions/{session_id}")
    def session_verdict(session_id: str) -> dict:
        record = get_session(session_id)
        with record.lock:
            state = record.state
            doc = _session_doc(record)
            doc["trace"] = [
                f"{entry.ordinal}. {entry.event_id}: {entry.note}"
                for entry in state.performed
            ]
            return doc

    @app.get("/sessions/{session_id}/log", response_class=PlainTextResponse)
    def session_log(session_id: str) -> str:
        record = get_session(session_id)
        with record.lock:
            return record.state.event_log()

    return app
