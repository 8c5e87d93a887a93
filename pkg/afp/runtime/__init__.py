"""The MAPE-K runtime: monitor, analyzer, executor, knowledge and manager."""

from .analyzer import Finding, analyze, synthesize_rule
from .executor import ExecutionOutcome, OutcomeKind, QuietStepper, Stepper, execute
from .knowledge import DeferredTask, HazardRecord, KnowledgeBase
from .manager import AutonomicManager, HazardResponse, MissionStatus, strongest_mode, toggle_visibility
from .monitor import monitor_detect, record_hazard
from .sink import NullSink, TraceSink, emit_visibility_changes

__all__ = [
    "AutonomicManager",
    "DeferredTask",
    "ExecutionOutcome",
    "Finding",
    "HazardRecord",
    "HazardResponse",
    "KnowledgeBase",
    "MissionStatus",
    "NullSink",
    "OutcomeKind",
    "QuietStepper",
    "Stepper",
    "TraceSink",
    "analyze",
    "emit_visibility_changes",
    "execute",
    "monitor_detect",
    "record_hazard",
    "strongest_mode",
    "synthesize_rule",
    "toggle_visibility",
]
