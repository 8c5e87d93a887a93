"""Rebuild world states from a trace."""

from typing import Dict, Optional

from afp.core.exceptions import DomainIntegrityError
from afp.models.scenario import Scenario
from afp.models.semantics import apply, reset_target
from afp.models.state import State
from afp.schemas.trace import TraceDocument


def replay_states(trace: TraceDocument, scenario: Scenario) -> Dict[int, State]:
    """
    State after every event, keyed by step.

    Actions are re-applied, hazards re-fired from their rules, resets and
    manager toggles recomputed; Snapshots and explicit mission starts
    resynchronise the state. Digests are checked as the replay goes.

    Raises:
        DomainIntegrityError: If a recomputed digest disagrees with the trace
    """
    domain = scenario.domain
    hazards = scenario.environment.hazard_map
    state = scenario.environment.initial_state
    starts = [m.start for m in scenario.environment.missions]
    states: Dict[int, State] = {}

    for event in trace.events:
        kind = event.kind
        if kind == "GoalIssued" and starts:
            start = starts[event.index % len(starts)]
            if start is not None:
                state = domain.state(start)
        elif kind == "ActionExecuted":
            state = apply(state, domain.action(event.action))
            _check(event.step, state, event.post)
        elif kind == "HazardInjected":
            state = state.overridden(hazards[event.rule].consequence)
            _check(event.step, state, event.post)
        elif kind == "ResetIssued":
            state = reset_target(state, domain)
            _check(event.step, state, event.post)
        elif kind == "VisibilityChanged" and event.cause == "ManagerToggle":
            state = state.with_values(**{event.predicate: event.value})
        elif kind == "Snapshot":
            state = domain.state(event.state)
        states[event.step] = state
    return states


def _check(step: int, state: State, digest: str) -> None:
    if state.digest() != digest:
        raise DomainIntegrityError(f"Replay diverged at step {step}: {state.digest()} != {digest}")


def state_after(states: Dict[int, State], step: Optional[int], initial: State) -> State:
    """Latest replayed state at or before ``step``; ``initial`` when there is none."""
    if step is None:
        return initial
    earlier = [s for s in states if s <= step]
    return states[max(earlier)] if earlier else initial


def state_at(trace: TraceDocument, scenario: Scenario, step: Optional[int] = None) -> State:
    """State after ``step`` (the last event when omitted); the initial state before any event."""
    if step is None:
        step = trace.last_step()
    return state_after(replay_states(trace, scenario), step, scenario.environment.initial_state)
