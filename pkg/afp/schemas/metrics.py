"""Pydantic schemas for run metrics documents."""

from typing import Dict, List, Optional

from pydantic import Field

from .base import BaseDocument
from .verdict import AntifragilityVerdict, StrengthReport


class MissionOutcome(BaseDocument):
    index: int
    mission: str
    outcome: str = Field(description="Completed, Aborted or Unfinished")
    reason: Optional[str] = None
    plan_lengths: List[int] = Field(default_factory=list, description="Lengths of every plan synthesized")
    hazards_detected: int = 0


class SnapshotStrength(BaseDocument):
    snapshot: int
    step: int
    report: StrengthReport


class MetricsDocument(BaseDocument):
    scenario: str
    seed: int
    missions: List[MissionOutcome] = Field(default_factory=list)
    completed: int = 0
    aborted: int = 0
    pathological: int = 0
    hazards_injected: Dict[str, int] = Field(default_factory=dict)
    hazards_detected: int = 0
    actions_executed: int = 0
    strength: List[SnapshotStrength] = Field(default_factory=list)
    antifragility: AntifragilityVerdict
