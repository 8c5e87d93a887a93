"""Trace recording with a monotone step counter."""

from typing import Any, List, Type

from afp.models.scenario import Scenario
from afp.models.semantics import partition_actions
from afp.models.state import State
from afp.schemas.trace import EventBase, Snapshot, TraceDocument


class TraceRecorder:
    """Collects events for one run; implements the runtime's trace sink."""

    def __init__(self, scenario: Scenario, seed: int, max_missions: int):
        self.scenario = scenario
        self.seed = seed
        self.max_missions = max_missions
        self.events: List[EventBase] = []
        self._snapshots = 0

    def emit(self, event_type: Type[EventBase], **fields: Any) -> EventBase:
        event = event_type(step=len(self.events), **fields)
        self.events.append(event)
        return event

    def snapshot(self, state: State, known_hazards=()) -> Snapshot:
        """Full listing of ``state`` with the sizes of its action partition."""
        part = partition_actions(state, self.scenario.domain)
        event = self.emit(
            Snapshot,
            index=self._snapshots,
            state=state.true_list(),
            digest=state.digest(),
            visible_predicates=sorted(state.true & self.scenario.domain.visibility_predicates),
            empowering=len(part.empowering),
            visible=len(part.visible),
            hidden=len(part.hidden),
            known_hazards=sorted(rule.name for rule in known_hazards),
        )
        self._snapshots += 1
        return event

    def document(self) -> TraceDocument:
        return TraceDocument(
            scenario=self.scenario.name,
            seed=self.seed,
            max_missions=self.max_missions,
            events=list(self.events),
        )
