"""The environment side of the game: hazard schedules, runs, replay, rendering and metrics."""

from .game import run_game
from .metrics import mission_outcomes, report_metrics, snapshot_strength
from .render import render_grid, render_state
from .replay import replay_states, state_after, state_at
from .schedule import HazardInjector
from .trace import TraceRecorder

__all__ = [
    "HazardInjector",
    "TraceRecorder",
    "mission_outcomes",
    "render_grid",
    "render_state",
    "replay_states",
    "report_metrics",
    "run_game",
    "snapshot_strength",
    "state_after",
    "state_at",
]
