"""
Pydantic schemas for the scenario file.

A scenario is a single JSON document with the top-level keys ``predicates``,
``actions``, ``waypoints``, ``reset``, ``initial_state``, ``missions``,
``hazards``, ``policy`` and ``seed``, plus optional ``name``, ``goals`` and
``grid``.
Literals are strings: ``"p"`` or ``"!p"``.
"""

from typing import Dict, List, Optional, Tuple

from pydantic import Field, field_validator

from afp.models.enums import ActionKind, Duration, PlanMode, Trigger, When

from .base import BaseDocument


class ActionDocument(BaseDocument):
    name: str = Field(..., min_length=1, description="Unique action name")
    kind: ActionKind = Field(default=ActionKind.OPERATIONAL, description="Empowering or Operational")
    visible_if: Optional[str] = Field(default=None, description="Visibility predicate (Operational only)")
    pre: List[str] = Field(default_factory=list, description="Precondition literals")
    eff: List[str] = Field(default_factory=list, description="Effect literals")


class ScheduleDocument(BaseDocument):
    trigger: Trigger = Field(default=Trigger.ALWAYS)
    n: Optional[int] = Field(default=None, ge=1, description="Match ordinal for NthMatch")
    p: Optional[float] = Field(default=None, ge=0.0, le=1.0, description="Firing probability")


class HazardDocument(BaseDocument):
    name: str = Field(..., min_length=1)
    source: List[str] = Field(default_factory=list, description="Source pattern literals")
    effect: List[str] = Field(..., description="Consequence literals")
    tags: List[str] = Field(default_factory=list, description="Hazard class tags")
    schedule: ScheduleDocument = Field(default_factory=ScheduleDocument)


class MissionDocument(BaseDocument):
    goal: List[str] = Field(..., description="Goal condition literals")
    start: Optional[List[str]] = Field(default=None, description="Closed-world start state, when fixed")
    name: Optional[str] = None


class ResetDocument(BaseDocument):
    preserve: List[str] = Field(default_factory=list, description="Predicates kept across resets")


class RecommendationDocument(BaseDocument):
    when: When = When.NOW
    duration: Duration = Duration.ALL
    mode: PlanMode = PlanMode.RESILIENT

    @field_validator("mode")
    @classmethod
    def validate_mode(cls, v: PlanMode) -> PlanMode:
        if PlanMode(v) is PlanMode.PLAIN:
            raise ValueError("mode must be Robust or Resilient")
        return v


class GridDocument(BaseDocument):
    """Rendering metadata; cells are [x, y] pairs."""

    cols: int = Field(..., ge=1)
    rows: int = Field(..., ge=1)
    fine_factor: int = Field(default=1, ge=1)
    spill_cells: List[Tuple[int, int]] = Field(default_factory=list)
    blocked_cells: List[Tuple[int, int]] = Field(default_factory=list)
    slippery_cells: List[Tuple[int, int]] = Field(default_factory=list)


DEFAULT_POLICY_KEY = "*"


class ScenarioDocument(BaseDocument):
    name: str = Field(default="scenario")
    predicates: List[str] = Field(default_factory=list)
    actions: List[ActionDocument] = Field(default_factory=list)
    waypoints: List[List[str]] = Field(default_factory=list)
    reset: ResetDocument = Field(default_factory=ResetDocument)
    initial_state: List[str] = Field(default_factory=list, description="True predicates; others are false")
    missions: List[MissionDocument] = Field(default_factory=list)
    goals: Optional[List[List[str]]] = Field(
        default=None, description="Explicit goal patterns; mission goals plus waypoints when omitted"
    )
    hazards: List[HazardDocument] = Field(default_factory=list)
    policy: Dict[str, RecommendationDocument] = Field(
        default_factory=dict, description=f"Tag to recommendation; '{DEFAULT_POLICY_KEY}' sets the default"
    )
    seed: Optional[int] = Field(default=None, ge=0, lt=2**64, description="AFP_DEFAULT_SEED applies when omitted")
    grid: Optional[GridDocument] = None
