"""
Trace-level antifragility check.

A system is antifragile w.r.t. a hazard set when, having been fragile at some
snapshot, it is robust or resilient at a later one. A trace with no fragile
snapshot satisfies the property vacuously and is flagged never-fragile.
"""

from typing import Iterable, List, Optional, Sequence

import structlog

from afp.models.action import Action
from afp.models.hazard import HazardRule
from afp.models.scenario import Scenario
from afp.models.semantics import partition_actions
from afp.models.state import State
from afp.schemas.trace import Snapshot, TraceDocument
from afp.schemas.verdict import AntifragilityVerdict, SnapshotVerdict, SystemVerdict

from .missions import snapshot_missions
from .system import classify_system

logger = structlog.get_logger(__name__)

ALLOWED_VISIBLE = "visible"
ALLOWED_ALL = "all"


def snapshot_state(scenario: Scenario, snapshot: Snapshot) -> State:
    return scenario.domain.state(snapshot.state)


def allowed_actions(scenario: Scenario, state: State, which: str = ALLOWED_VISIBLE) -> Iterable[Action]:
    """``visible``: Operational actions visible in ``state``; ``all``: every action."""
    if which == ALLOWED_ALL:
        return scenario.domain.actions
    if which != ALLOWED_VISIBLE:
        raise ValueError(f"unknown action selection '{which}'")
    return partition_actions(state, scenario.domain).visible


def classify_snapshot(
    scenario: Scenario,
    state: State,
    hazards: Sequence[HazardRule],
    *,
    which: str = ALLOWED_VISIBLE,
    budget: Optional[int] = None,
) -> SystemVerdict:
    """Classify the system as it stood at a snapshot, posing every goal from its state."""
    return classify_system(
        scenario.domain,
        scenario.environment,
        allowed_actions(scenario, state, which),
        hazards,
        missions=snapshot_missions(scenario, state),
        budget=budget,
    )


def check_antifragile(
    trace: TraceDocument,
    scenario: Scenario,
    hazards: Optional[Sequence[HazardRule]] = None,
    *,
    which: str = ALLOWED_VISIBLE,
    budget: Optional[int] = None,
) -> AntifragilityVerdict:
    """
    Check the trace's snapshots for fragile-then-recovered.

    Args:
        hazards: Hazard set, every scenario hazard when omitted

    Returns:
        The verdict citing the first fragile snapshot and the first later
        robust or resilient one
    """
    rules = tuple(hazards) if hazards is not None else scenario.environment.hazards
    verdicts: List[SnapshotVerdict] = []
    for snapshot in trace.snapshots():
        system = classify_snapshot(scenario, snapshot_state(scenario, snapshot), rules, which=which, budget=budget)
        verdicts.append(
            SnapshotVerdict(
                index=snapshot.index,
                step=snapshot.step,
                fragile=system.fragile,
                robust=system.robust,
                resilient=system.resilient,
            )
        )

    fragile_at = next((v.index for v in verdicts if v.fragile), None)
    recovered_at = None
    if fragile_at is not None:
        recovered_at = next(
            (v.index for v in verdicts if v.index > fragile_at and (v.robust or v.resilient)),
            None,
        )
    verdict = AntifragilityVerdict(
        antifragile=fragile_at is None or recovered_at is not None,
        never_fragile=fragile_at is None,
        fragile_snapshot=fragile_at,
        recovered_snapshot=recovered_at,
        hazards=sorted(rule.name for rule in rules),
        snapshots=verdicts,
    )
    logger.info(
        "classifier.antifragility",
        antifragile=verdict.antifragile,
        fragile_snapshot=fragile_at,
        recovered_snapshot=recovered_at,
    )
    return verdict
