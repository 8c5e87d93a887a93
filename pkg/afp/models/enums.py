"""Enumerations shared across the domain, planner and runtime."""

from enum import Enum


class ActionKind(str, Enum):
    EMPOWERING = "Empowering"
    OPERATIONAL = "Operational"


class PlanMode(str, Enum):
    """Rungs of the planner's fallback ladder."""

    ROBUST = "Robust"
    RESILIENT = "Resilient"
    PLAIN = "Plain"


class When(str, Enum):
    NOW = "Now"
    LATER = "Later"


class Duration(str, Enum):
    CURRENT = "Current"
    ALL = "All"


class Trigger(str, Enum):
    """Hazard schedule triggers."""

    ALWAYS = "Always"
    NTH_MATCH = "NthMatch"
    PROBABILITY = "Probability"


class VisibilityCause(str, Enum):
    EMPOWERING_ACTION = "EmpoweringAction"
    HAZARD = "Hazard"
    MANAGER_TOGGLE = "ManagerToggle"
    OPERATIONAL_ACTION = "OperationalAction"
    RESET = "Reset"
