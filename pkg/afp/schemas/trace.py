"""
Pydantic schemas for trace events.

A trace is the ordered event log of one game: goals issued, plans
synthesized, actions executed, hazards injected and detected, analyzer
recommendations, visibility changes, resets, mission outcomes and snapshots.
Every event carries a monotone ``step`` counter and a ``kind`` discriminator;
the NDJSON trace file holds one event per line.
"""

from typing import List, Literal, Optional, Union

from pydantic import Field, TypeAdapter
from typing_extensions import Annotated

from .base import BaseDocument


class EventBase(BaseDocument):
    step: int = Field(ge=0, description="Monotone step counter")


class GoalIssued(EventBase):
    kind: Literal["GoalIssued"] = "GoalIssued"
    mission: str
    index: int
    goal: List[str]


class PlanSynthesized(EventBase):
    kind: Literal["PlanSynthesized"] = "PlanSynthesized"
    mission: str
    purpose: str = Field(description="mission, recovery, hidden or empowerment")
    mode: str = Field(description="Ladder rung that produced the plan")
    plan: List[str]


class ActionExecuted(EventBase):
    kind: Literal["ActionExecuted"] = "ActionExecuted"
    action: str
    pre: str = Field(description="Digest of the pre-state")
    post: str = Field(description="Digest of the post-state")


class HazardInjected(EventBase):
    kind: Literal["HazardInjected"] = "HazardInjected"
    rule: str
    pre: str = Field(description="Digest of the hazard source e")
    post: str = Field(description="Digest of the consequence c")


class HazardDetected(EventBase):
    kind: Literal["HazardDetected"] = "HazardDetected"
    step_index: int = Field(description="Plan step whose precondition failed")
    pre: str
    observed: str
    matched_rules: List[str]
    mismatch: List[str] = Field(description="Violated precondition literals")


class RecommendationChosen(EventBase):
    kind: Literal["RecommendationChosen"] = "RecommendationChosen"
    hazards: List[str]
    when: str
    duration: str
    mode: str


class VisibilityChanged(EventBase):
    kind: Literal["VisibilityChanged"] = "VisibilityChanged"
    predicate: str
    value: bool
    cause: str


class ResetIssued(EventBase):
    kind: Literal["ResetIssued"] = "ResetIssued"
    pre: str
    post: str


class TaskQueued(EventBase):
    kind: Literal["TaskQueued"] = "TaskQueued"
    predicates: List[str]
    duration: str


class PathologicalOutcome(EventBase):
    kind: Literal["PathologicalOutcome"] = "PathologicalOutcome"
    mission: str
    reason: str


class MissionCompleted(EventBase):
    kind: Literal["MissionCompleted"] = "MissionCompleted"
    mission: str


class MissionAborted(EventBase):
    kind: Literal["MissionAborted"] = "MissionAborted"
    mission: str
    reason: str


class Snapshot(EventBase):
    kind: Literal["Snapshot"] = "Snapshot"
    index: int = Field(description="Snapshot ordinal")
    state: List[str] = Field(description="True predicates (full listing, closed world)")
    digest: str
    visible_predicates: List[str]
    empowering: int
    visible: int
    hidden: int
    known_hazards: List[str] = Field(default_factory=list)


TraceEvent = Annotated[
    Union[
        GoalIssued,
        PlanSynthesized,
        ActionExecuted,
        HazardInjected,
        HazardDetected,
        RecommendationChosen,
        VisibilityChanged,
        ResetIssued,
        TaskQueued,
        PathologicalOutcome,
        MissionCompleted,
        MissionAborted,
        Snapshot,
    ],
    Field(discriminator="kind"),
]

trace_event_adapter: TypeAdapter = TypeAdapter(TraceEvent)


class TraceDocument(BaseDocument):
    """A whole trace plus the run parameters that produced it."""

    scenario: str
    seed: int
    max_missions: int
    events: List[TraceEvent] = Field(default_factory=list)

    def of_kind(self, kind: str) -> list:
        return [event for event in self.events if event.kind == kind]

    def snapshots(self) -> List[Snapshot]:
        return self.of_kind("Snapshot")

    def last_step(self) -> Optional[int]:
        return self.events[-1].step if self.events else None
