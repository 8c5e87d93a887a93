"""Plan synthesis: shortest, robust, resilient and minimum-hidden plans."""

from .planner import (
    MinHiddenResult,
    Path,
    Plan,
    PlanRequest,
    RecoveryCache,
    achieve_predicates,
    find_plan,
    find_plan_min_hidden,
    find_resilient_plan,
    find_robust_plan,
    ladder,
    path_of,
    plan_for_missions,
    plan_in_mode,
    plan_with_recommendation,
)

__all__ = [
    "MinHiddenResult",
    "Path",
    "Plan",
    "PlanRequest",
    "RecoveryCache",
    "achieve_predicates",
    "find_plan",
    "find_plan_min_hidden",
    "find_resilient_plan",
    "find_robust_plan",
    "ladder",
    "path_of",
    "plan_for_missions",
    "plan_in_mode",
    "plan_with_recommendation",
]
