"""
Domain-core value types and their transition semantics.

All values are immutable after construction and safe to share across readers.
"""

from .action import Action
from .domain import Domain, Environment, Mission, ResetPolicy
from .enums import ActionKind, Duration, PlanMode, Trigger, VisibilityCause, When
from .hazard import HazardRule, HazardSchedule
from .literals import Condition, Effect, Literal, parse_literal
from .recommendation import DEFAULT_RECOMMENDATION, AnalyzerPolicy, Recommendation
from .scenario import GridLayout, Scenario
from .semantics import (
    ActionPartition,
    applicable,
    apply,
    hazard_consequence,
    matching_rules,
    partition_actions,
    reset_target,
)
from .state import State
from .validation import Violation, validate_domain

__all__ = [
    "Action",
    "ActionKind",
    "ActionPartition",
    "AnalyzerPolicy",
    "Condition",
    "DEFAULT_RECOMMENDATION",
    "Domain",
    "Duration",
    "Effect",
    "Environment",
    "GridLayout",
    "HazardRule",
    "HazardSchedule",
    "Literal",
    "Mission",
    "PlanMode",
    "Recommendation",
    "ResetPolicy",
    "Scenario",
    "State",
    "Trigger",
    "Violation",
    "VisibilityCause",
    "When",
    "applicable",
    "apply",
    "hazard_consequence",
    "matching_rules",
    "parse_literal",
    "partition_actions",
    "reset_target",
    "validate_domain",
]
