"""Compound questions: an action-sequence session with advice and
invalidation, stepped the way the interactive UI drives it."""

from fiqhkit import init_session, step, verdict
from fiqhkit.datafiles import DataRegistry

automaton = DataRegistry().automata["wudu-shafii"]
state = init_session(automaton)
print("start:", state.status, "| expected:", state.expected_action)

# Jumping ahead earns advice; the step is recorded but not credited.
state = step(state, "wash_face")
print("advice:", state.advice.kind, "|", state.advice.message)

for action in ["intention", "wash_face", "wash_arms", "wipe_head", "wash_feet"]:
    state = step(state, action)
print("after the full ordered run:", state.status)

# An invalidation event voids the state and resets progress.
state = step(state, "urination")
print("after urination:", state.status, "| missing:", ", ".join(state.missing()))

# Full re-performance recovers validity.
for action in ["intention", "wash_face", "wash_arms", "wipe_head", "wash_feet"]:
    state = step(state, action)
outcome = verdict(state)
print("final:", outcome["status"])
print("trace:")
for line in outcome["trace"]:
    print(" ", line)
