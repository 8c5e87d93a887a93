"""
Text rendering of grid scenarios at a trace step.

Rows are printed north to south. In fine mode every coarse cell is a
``fine_factor`` square of characters: a robot on the coarse grid fills its
whole cell, a robot inside a spill occupies a single subcell.
"""

from typing import Dict, List, Optional, Tuple

from afp.core.config import settings
from afp.core.exceptions import PreconditionViolation, UnsupportedRenderError
from afp.models.scenario import GridLayout, Scenario
from afp.models.semantics import apply
from afp.models.state import State
from afp.scenarios.gridbot import IN_SPILL, cell_of, fine_of, heading_of
from afp.schemas.trace import TraceDocument

from .replay import replay_states, state_after

Cell = Tuple[int, int]

ROBOT = {"N": "^", "E": ">", "S": "v", "W": "<", None: "R"}
BLOCKED = "#"
SPILL = "~"
SLIPPERY = ":"
EMPTY = "."
PATH = "*"


def _planned_path(trace: TraceDocument, scenario: Scenario, states: Dict[int, State], step: int) -> List[State]:
    plans = [e for e in trace.of_kind("PlanSynthesized") if e.step <= step]
    if not plans:
        return []
    event = plans[-1]
    state = states.get(event.step, scenario.environment.initial_state)
    path = [state]
    for name in event.plan:
        try:
            state = apply(state, scenario.domain.action(name))
        except PreconditionViolation:
            break
        path.append(state)
    return path


def _base(layout: GridLayout, f: int) -> List[List[str]]:
    canvas = [[EMPTY] * (layout.cols * f) for _ in range(layout.rows * f)]
    for y in range(layout.rows):
        for x in range(layout.cols):
            if (x, y) in layout.blocked_cells:
                glyph = BLOCKED
            elif (x, y) in layout.spill_cells:
                glyph = SPILL
            elif (x, y) in layout.slippery_cells:
                glyph = SLIPPERY
            else:
                continue
            _fill(canvas, (x, y), f, glyph)
    return canvas


def _fill(canvas: List[List[str]], cell: Cell, f: int, glyph: str) -> None:
    x, y = cell
    for j in range(f):
        for i in range(f):
            canvas[y * f + j][x * f + i] = glyph


def _mark(canvas: List[List[str]], state: State, f: int, fine: bool, glyph: str) -> None:
    sub = fine_of(state) if IN_SPILL in state.true else None
    if sub is not None and fine:
        canvas[sub[1]][sub[0]] = glyph
        return
    cell = cell_of(state)
    if cell is not None:
        _fill(canvas, cell, f, glyph)


def render_state(
    scenario: Scenario, state: State, path: Optional[List[State]] = None, *, fine: Optional[bool] = None
) -> str:
    """
    Render ``state`` on the scenario's grid, overlaying ``path`` when given.

    Raises:
        UnsupportedRenderError: If the scenario has no grid metadata
    """
    layout = scenario.grid
    if layout is None:
        raise UnsupportedRenderError(f"Scenario '{scenario.name}' declares no grid metadata")
    fine = settings.RENDER_FINE if fine is None else fine
    f = layout.fine_factor if fine else 1
    canvas = _base(layout, f)

    for visited in path or ():
        _mark(canvas, visited, f, fine, PATH)
    _mark(canvas, state, f, fine, ROBOT[heading_of(state)])
    return "\n".join("".join(row) for row in reversed(canvas))


def render_grid(
    trace: TraceDocument, step: Optional[int], scenario: Scenario, *, fine: Optional[bool] = None
) -> str:
    """
    Render the robot, hazard cells and current plan after ``step``.

    Args:
        step: Trace step; the last event when None, the initial state when
            the trace is empty

    Raises:
        UnsupportedRenderError: If the scenario has no grid metadata
    """
    if scenario.grid is None:
        raise UnsupportedRenderError(f"Scenario '{scenario.name}' declares no grid metadata")
    states = replay_states(trace, scenario)
    if step is None:
        step = trace.last_step()
    state = state_after(states, step, scenario.environment.initial_state)
    path = _planned_path(trace, scenario, states, step) if step is not None else []
    return render_state(scenario, state, path, fine=fine)
