"""
Pydantic schemas for classification verdicts and strength reports.

These are the serialized forms of the classifier's results; states appear as
sorted lists of their true predicates plus a stable digest.
"""

from typing import List, Optional

from pydantic import Field

from .base import BaseDocument


class StateRef(BaseDocument):
    """A state by its true predicates and digest."""

    true: List[str] = Field(description="Sorted true predicates")
    digest: str = Field(description="Stable 64-bit digest")


class SourceWitness(BaseDocument):
    """First path state matching a hazard source."""

    step: int = Field(description="Index of the state on the plan path")
    state: StateRef
    rules: List[str] = Field(description="Rules whose source matches the state")


class FragilityWitness(BaseDocument):
    """Hazard on the path whose consequence admits no plan to the goal."""

    step: Optional[int] = Field(default=None, description="Index on the plan path, when known")
    state: StateRef = Field(description="Hazard source s")
    rule: str = Field(description="Hazard rule fired in s")
    consequence: StateRef = Field(description="Hazard consequence t")


class PlanVerdict(BaseDocument):
    """Definition-level classification of a single plan."""

    robust: bool
    resilient: bool
    fragile: bool
    achieves_goal: bool = Field(description="Whether the plan's final state satisfies the goal")
    plan: List[str] = Field(default_factory=list)
    first_hazard_source: Optional[SourceWitness] = None
    fragility_witness: Optional[FragilityWitness] = None


class MissionEvidence(BaseDocument):
    """Per-mission facts behind a system verdict."""

    mission: str
    start: StateRef
    goal: List[str]
    achievable: bool
    unachievable: bool = Field(description="Flag: goal unreachable even without hazards")
    has_robust_plan: bool
    has_resilient_plan: bool
    all_plans_resilient: bool
    robust_plan_length: Optional[int] = None
    resilient_plan_length: Optional[int] = None
    unrecoverable: Optional[FragilityWitness] = None


class SystemVerdict(BaseDocument):
    """Definition-level classification of a whole system w.r.t. a hazard set."""

    fragile: bool
    robust: bool
    resilient: bool
    hazards: List[str] = Field(default_factory=list)
    missions: List[MissionEvidence] = Field(default_factory=list)

    @property
    def not_fragile(self) -> bool:
        return not self.fragile


class StrengthReport(BaseDocument):
    """Achievable missions plus bounded plan counts per mission."""

    bound: int = Field(description="Plan length bound L")
    mission_count: int
    achievable_missions: int
    plan_counts: List[int] = Field(description="Distinct executable plans of length <= L, per mission")

    @property
    def total_plans(self) -> int:
        return sum(self.plan_counts)


class SnapshotVerdict(BaseDocument):
    index: int = Field(description="Snapshot ordinal in the trace")
    step: int = Field(description="Trace step of the snapshot event")
    fragile: bool
    robust: bool
    resilient: bool


class AntifragilityVerdict(BaseDocument):
    """Trace-level check: fragile at some snapshot implies robust or resilient later."""

    antifragile: bool
    never_fragile: bool
    fragile_snapshot: Optional[int] = None
    recovered_snapshot: Optional[int] = None
    hazards: List[str] = Field(default_factory=list)
    snapshots: List[SnapshotVerdict] = Field(default_factory=list)
