"""File persistence for scenarios and traces."""

from .base import DocumentRepository
from .scenario import (
    ScenarioRepository,
    check_scenario,
    dump_scenario,
    load_scenario,
    save_scenario,
)
from .trace import dumps_trace, load_trace, loads_trace, save_trace

__all__ = [
    "DocumentRepository",
    "ScenarioRepository",
    "check_scenario",
    "dump_scenario",
    "dumps_trace",
    "load_scenario",
    "load_trace",
    "loads_trace",
    "save_scenario",
    "save_trace",
]
