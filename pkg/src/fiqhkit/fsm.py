"""Compound questions as a finite-state machine over action sequences.

An automaton file is JSON::

    {
      "id": "wudu-shafii",
      "mode": "deterministic-ordered",
      "actions": [
        {"id": "intention", "label": "intention", "order": 1},
        ...
      ],
      "invalidation_events": [
        {"id": "urination", "label": "urination", "policy": "reset-to-initial"}
      ]
    }

In deterministic-ordered mode exactly one obligatory action is enabled at
a time; performing it advances progress, performing a later one is
recorded but not credited and earns out-of-order advice, so the session
stays recoverable.  In unordered mode any not-yet-credited obligatory
action is enabled.  Invalidation events reset progress to the initial
state.  Sessions are immutable values: ``step`` maps a state and an event
to a new state, and the performed history is append-only.

A session trace exports as an event log, one line per event:
``<seq> <ordinal> <event-id>``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence, Union

from .errors import LoadError, SessionError

ORDERED = "deterministic-ordered"
UNORDERED = "unordered"

IN_PROGRESS = "in-progress"
VALID = "valid"
INVALID = "invalid"
INVALIDATED = "invalidated"

RESET_TO_INITIAL = "reset-to-initial"

MISSING_STEP = "missing-step"
OUT_OF_ORDER = "out-of-order"
INVALIDATED_ADVICE = "invalidated"
REDUNDANT = "redundant"


@dataclass(frozen=True)
class Action:
    id: str
    label: str
    obligatory: bool = True


@dataclass(frozen=True)
class InvalidationEvent:
    id: str
    label: str
    policy: str = RESET_TO_INITIAL

    def __post_init__(self) -> None:
        if self.policy != RESET_TO_INITIAL:
            raise LoadError(f"unknown invalidation policy: {self.policy!r}")


@dataclass(frozen=True)
class Advice:
    kind: str
    message: str
    offending_action: Optional[str] = None
    expected_action: Optional[str] = None


@dataclass(frozen=True)
class PerformedEvent:
    ordinal: int
    event_id: str
    credited: bool
    note: str


class Automaton:
    def __init__(
        self,
        automaton_id: str,
        mode: str,
        actions: Sequence[Action],
        invalidation_events: Sequence[InvalidationEvent] = (),
    ):
        if mode not in (ORDERED, UNORDERED):
            raise LoadError(f"unknown automaton mode: {mode!r}")
        if not actions:
            raise LoadError("an automaton needs at least one action")
        ids = [a.id for a in actions] + [e.id for e in invalidation_events]
        duplicates = {i for i in ids if ids.count(i) > 1}
        if duplicates:
            raise LoadError("duplicate action/event id(s): " + ", ".join(sorted(duplicates)))
        self.id = automaton_id
        self.mode = mode
        self.actions = tuple(actions)
        self.invalidation_events = tuple(invalidation_events)
        self.obligatory = tuple(a for a in self.actions if a.obligatory)
        self._actions_by_id = {a.id: a for a in self.actions}
        self._events_by_id = {e.id: e for e in self.invalidation_events}

    def action(self, action_id: str) -> Action:
        return self._actions_by_id[action_id]

    def label_of(self, event_id: str) -> str:
        if event_id in self._actions_by_id:
            return self._actions_by_id[event_id].label
        return self._events_by_id[event_id].label


@dataclass(frozen=True)
class SessionState:
    automaton: Automaton
    performed: tuple[PerformedEvent, ...] = ()
    credited: tuple[str, ...] = ()
    status: str = IN_PROGRESS
    advice: Optional[Advice] = None

    @property
    def expected_action(self) -> Optional[str]:
        """Next obligatory action in ordered mode; None when unordered or done."""
        if self.automaton.mode != ORDERED:
            return None
        done = set(self.credited)
        for action in self.automaton.obligatory:
            if action.id not in done:
                return action.id
        return None

    @property
    def enabled_actions(self) -> tuple[str, ...]:
        done = set(self.credited)
        if self.automaton.mode == ORDERED:
            nxt = self.expected_action
            return (nxt,) if nxt else ()
        return tuple(a.id for a in self.automaton.obligatory if a.id not in done)

    def missing(self) -> tuple[str, ...]:
        done = set(self.credited)
        return tuple(a.id for a in self.automaton.obligatory if a.id not in done)

    def event_log(self) -> str:
        return "".join(
            f"{i + 1} {entry.ordinal} {entry.event_id}\n"
            for i, entry in enumerate(self.performed)
        )


def load_automaton(doc: Union[str, Mapping]) -> Automaton:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise LoadError(f"malformed automaton document: {exc}") from None
    if not isinstance(doc, Mapping):
        raise LoadError("automaton document must be a JSON object")
    entries = doc.get("actions", [])
    if not isinstance(entries, list) or not entries:
        raise LoadError("an automaton needs at least one action")
    ordered = sorted(
        entries,
        key=lambda e: (e.get("order") is None, e.get("order", 0)),
    )
    actions = [
        Action(e["id"], str(e.get("label", e["id"])), bool(e.get("obligatory", True)))
        for e in ordered
    ]
    events = [
        InvalidationEvent(
            e["id"], str(e.get("label", e["id"])), e.get("policy", RESET_TO_INITIAL)
        )
        for e in doc.get("invalidation_events", [])
    ]
    return Automaton(
        doc.get("id", "automaton"), doc.get("mode", ORDERED), actions, events
    )


def init_session(automaton: Automaton) -> SessionState:
    state = SessionState(automaton)
    expected = state.expected_action
    message = (
        f"next obligatory action: {automaton.label_of(expected)}"
        if expected
        else "no obligatory action performed yet"
    )
    return replace(
        state, advice=Advice(MISSING_STEP, message, expected_action=expected)
    )


def step(state: SessionState, event_id: str) -> SessionState:
    """Apply one action or invalidation event, returning the new state.

    The performed history only ever grows.  A valid session accepts
    invalidation events but no further actions.
    """
    automaton = state.automaton
    ordinal = len(state.performed) + 1

    if event_id in automaton._events_by_id:
        entry = PerformedEvent(ordinal, event_id, False, "invalidation: progress reset")
        advice = Advice(
            INVALIDATED_ADVICE,
            f"{automaton.label_of(event_id)} invalidated the state; "
            "all obligatory actions must be performed again",
            offending_action=event_id,
        )
        return replace(
            state,
            performed=state.performed + (entry,),
            credited=(),
            status=INVALIDATED,
            advice=advice,
        )

    if event_id not in automaton._actions_by_id:
        raise SessionError(f"unknown action or event id: {event_id!r}")
    if state.status == VALID:
        raise SessionError("the session is already valid; only invalidation events apply")

    action = automaton.action(event_id)

    if not action.obligatory:
        entry = PerformedEvent(ordinal, event_id, False, "recommended action recorded")
        return replace(state, performed=state.performed + (entry,), advice=None)

    done = set(state.credited)
    if event_id in done:
        entry = PerformedEvent(ordinal, event_id, False, "already credited")
        advice = Advice(
            REDUNDANT,
            f"{action.label} was already performed",
            offending_action=event_id,
        )
        return replace(
            state,
            performed=state.performed + (entry,),
            status=IN_PROGRESS if state.status == INVALIDATED else state.status,
            advice=advice,
        )

    if automaton.mode == ORDERED:
        expected = state.expected_action
        if event_id != expected:
            entry = PerformedEvent(ordinal, event_id, False, f"out of order; expected {expected}")
            advice = Advice(
                OUT_OF_ORDER,
                f"out-of-order, expected: {automaton.label_of(expected)}",
                offending_action=event_id,
                expected_action=expected,
            )
            return replace(
                state,
                performed=state.performed + (entry,),
                status=IN_PROGRESS,
                advice=advice,
            )

    entry = PerformedEvent(ordinal, event_id, True, "credited")
    credited = state.credited + (event_id,)
    missing_after = {a.id for a in automaton.obligatory} - set(credited)
    status = VALID if not missing_after else IN_PROGRESS
    return replace(
        state,
        performed=state.performed + (entry,),
        credited=credited,
        status=status,
        advice=None,
    )


def verdict(state: SessionState) -> dict:
    """Final ruling for a session: status, uncredited obligatory actions,
    and the full explanation trace."""
    trace = [
        f"{entry.ordinal}. {entry.event_id}: {entry.note}" for entry in state.performed
    ]
    return {
        "status": state.status,
        "missing": list(state.missing()),
        "trace": trace,
    }


def check_deterministic(automaton: Automaton) -> bool:
    """True when every reachable progress state enables at most one
    crediting action."""
    if automaton.mode == ORDERED:
        return True
    return len(automaton.obligatory) <= 1


def replay_log(automaton: Automaton, log_text: str) -> SessionState:
    """Run an exported event log through a fresh session."""
    state = init_session(automaton)
    for lineno, raw in enumerate(log_text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise LoadError(f"event log line {lineno}: expected '<seq> <ordinal> <event-id>'")
        state = step(state, parts[2])
    return state
