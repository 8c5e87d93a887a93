"""
Run metrics computed from a trace.

Mission outcomes, hazard and action counts, a strength report per
snapshot, and the antifragility verdict over the snapshots.
"""

from collections import Counter
from typing import List, Optional

import structlog

from afp.classifier import (
    allowed_actions,
    check_antifragile,
    hazard_recovery_missions,
    snapshot_missions,
    snapshot_state,
    strength_metric,
)
from afp.models.scenario import Scenario
from afp.schemas.metrics import MetricsDocument, MissionOutcome, SnapshotStrength
from afp.schemas.trace import TraceDocument

logger = structlog.get_logger(__name__)


def mission_outcomes(trace: TraceDocument) -> List[MissionOutcome]:
    """One outcome per GoalIssued; missions the trace cuts off are Unfinished."""
    outcomes: List[MissionOutcome] = []
    current: Optional[MissionOutcome] = None
    for event in trace.events:
        if event.kind == "GoalIssued":
            current = MissionOutcome(index=event.index, mission=event.mission, outcome="Unfinished")
            outcomes.append(current)
        elif current is None:
            continue
        elif event.kind == "PlanSynthesized" and event.purpose != "empowerment":
            current.plan_lengths.append(len(event.plan))
        elif event.kind == "HazardDetected":
            current.hazards_detected += 1
        elif event.kind == "MissionCompleted":
            current.outcome = "Completed"
            current = None
        elif event.kind == "MissionAborted":
            current.outcome = "Aborted"
            current.reason = event.reason
            current = None
    return outcomes


def snapshot_strength(
    trace: TraceDocument, scenario: Scenario, *, bound: Optional[int] = None, budget: Optional[int] = None
) -> List[SnapshotStrength]:
    """
    Strength of the visible actions at every snapshot.

    Missions are the scenario's goals posed from the snapshot state plus the
    recovery missions starting at each hazard consequence those plans meet.
    """
    hazards = scenario.environment.hazards
    reports = []
    for snapshot in trace.snapshots():
        state = snapshot_state(scenario, snapshot)
        actions = tuple(allowed_actions(scenario, state))
        missions = snapshot_missions(scenario, state)
        missions += hazard_recovery_missions(missions, actions, hazards, budget=budget)
        report = strength_metric(scenario.domain, actions, missions, bound, budget=budget)
        reports.append(SnapshotStrength(snapshot=snapshot.index, step=snapshot.step, report=report))
    return reports


def report_metrics(
    trace: TraceDocument,
    scenario: Scenario,
    *,
    bound: Optional[int] = None,
    budget: Optional[int] = None,
) -> MetricsDocument:
    """
    Metrics document for a completed trace.

    Args:
        trace: The run's trace
        scenario: The scenario the trace was played on
        bound: Strength plan-length bound, the configured default when omitted
    """
    outcomes = mission_outcomes(trace)
    injected = Counter(event.rule for event in trace.of_kind("HazardInjected"))
    document = MetricsDocument(
        scenario=trace.scenario,
        seed=trace.seed,
        missions=outcomes,
        completed=sum(o.outcome == "Completed" for o in outcomes),
        aborted=sum(o.outcome == "Aborted" for o in outcomes),
        pathological=len(trace.of_kind("PathologicalOutcome")),
        hazards_injected=dict(sorted(injected.items())),
        hazards_detected=len(trace.of_kind("HazardDetected")),
        actions_executed=len(trace.of_kind("ActionExecuted")),
        strength=snapshot_strength(trace, scenario, bound=bound, budget=budget),
        antifragility=check_antifragile(trace, scenario, budget=budget),
    )
    logger.info(
        "metrics.reported",
        scenario=trace.scenario,
        completed=document.completed,
        aborted=document.aborted,
        antifragile=document.antifragility.antifragile,
    )
    return document
