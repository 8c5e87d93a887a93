"""Fragility, robustness and resilience of plans and systems; strength; antifragility."""

from .antifragility import (
    ALLOWED_ALL,
    ALLOWED_VISIBLE,
    allowed_actions,
    check_antifragile,
    classify_snapshot,
    snapshot_state,
)
from .missions import MissionCase, env_missions, hazard_recovery_missions, snapshot_missions
from .oracle import SCOPE_FULL, SCOPE_REACHABLE, oracle_classify, oracle_classify_plan
from .plans import classify_plan, state_ref
from .reachability import forward_closure, goal_region
from .strength import strength_metric
from .system import classify_system

__all__ = [
    "ALLOWED_ALL",
    "ALLOWED_VISIBLE",
    "MissionCase",
    "SCOPE_FULL",
    "SCOPE_REACHABLE",
    "allowed_actions",
    "check_antifragile",
    "classify_plan",
    "classify_snapshot",
    "classify_system",
    "env_missions",
    "forward_closure",
    "goal_region",
    "hazard_recovery_missions",
    "oracle_classify",
    "oracle_classify_plan",
    "snapshot_missions",
    "snapshot_state",
    "state_ref",
    "strength_metric",
]
