"""
Pydantic schemas for every document the package reads or writes.

Scenario files, trace events, verdicts, strength reports and metrics.
"""

from .base import BaseDocument, ErrorDocument, ResultDocument
from .metrics import MetricsDocument, MissionOutcome, SnapshotStrength
from .scenario import (
    ActionDocument,
    GridDocument,
    HazardDocument,
    MissionDocument,
    RecommendationDocument,
    ResetDocument,
    ScenarioDocument,
    ScheduleDocument,
)
from .trace import (
    ActionExecuted,
    GoalIssued,
    HazardDetected,
    HazardInjected,
    MissionAborted,
    MissionCompleted,
    PathologicalOutcome,
    PlanSynthesized,
    RecommendationChosen,
    ResetIssued,
    Snapshot,
    TaskQueued,
    TraceDocument,
    TraceEvent,
    VisibilityChanged,
    trace_event_adapter,
)
from .verdict import (
    AntifragilityVerdict,
    FragilityWitness,
    MissionEvidence,
    PlanVerdict,
    SnapshotVerdict,
    SourceWitness,
    StateRef,
    StrengthReport,
    SystemVerdict,
)
