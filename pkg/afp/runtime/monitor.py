"""
Monitor: hazard detection by precondition mismatch.

The monitor cannot see hazards directly. It notices them when the observed
state no longer satisfies the precondition of the next planned action.
"""

from typing import Optional, Tuple

import structlog

from afp.models.action import Action
from afp.models.state import State

from .knowledge import HazardRecord, KnowledgeBase

logger = structlog.get_logger(__name__)


def monitor_detect(observed: State, next_action: Action) -> Optional[Tuple[str, ...]]:
    """Violated precondition literals of ``next_action`` in ``observed``, or None when applicable."""
    failing = next_action.precondition.violated_in(observed.true)
    if not failing:
        return None
    return tuple(str(lit) for lit in failing)


def record_hazard(
    kb: KnowledgeBase,
    e: State,
    c: State,
    step: int,
    mismatch: Tuple[str, ...] = (),
) -> HazardRecord:
    """
    Append the hazard (e, c) to the history.

    A cataloged rule explains the hazard when e matches its source and c is e
    overridden by its consequence. Unexplained hazards are still recorded.
    """
    matched = tuple(
        rule.name
        for rule in kb.catalog
        if rule.source.holds_in(e.true) and rule.consequence.override(e.true) == c.true
    )
    record = HazardRecord(pre=e, observed=c, step_index=step, matched_rules=matched, mismatch=tuple(mismatch))
    kb.history.append(record)
    logger.info("monitor.hazard", step=step, rules=list(matched), mismatch=list(mismatch))
    return record
