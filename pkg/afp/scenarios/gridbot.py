"""
Grid robot scenario builder.

A robot navigates a sparse grid of coarse cells with MOVE and TURN. Spill
cells are hazardous: entering one may throw the robot into the spill, where
only the fine-grained smallMOVE and smallTURN actions work. Those start
hidden; the empowering chain CALIBRATE_SENSORS then ENABLE_FINE_SENSORS
uncovers them.

Predicate names:
    at_x_y        robot in coarse cell (x, y)
    heading_H     robot faces H in {N, E, S, W}; N increases y
    inSpill       robot is slipping inside a slippery region
    fat_fx_fy     fine position, only for subcells of slippery cells
    vis_move, vis_smallMOVE, vis_smallTURN, sensorsCalibrated
"""

from typing import Dict, FrozenSet, List, Optional, Set, Tuple

import structlog
from pydantic import BaseModel, ConfigDict, Field

from afp.core.exceptions import GridSpecError
from afp.models.action import Action
from afp.models.domain import Domain, Environment, Mission, ResetPolicy
from afp.models.enums import ActionKind, Duration, PlanMode, When
from afp.models.hazard import HazardRule, HazardSchedule
from afp.models.literals import Condition, Effect
from afp.models.recommendation import AnalyzerPolicy, Recommendation
from afp.models.scenario import GridLayout, Scenario
from afp.models.state import State

logger = structlog.get_logger(__name__)

Cell = Tuple[int, int]

HEADINGS = ("N", "E", "S", "W")
DELTAS: Dict[str, Cell] = {"N": (0, 1), "E": (1, 0), "S": (0, -1), "W": (-1, 0)}
# 90 degree rotations: right then left
ROTATIONS: Dict[str, Tuple[str, str]] = {
    "N": ("E", "W"),
    "E": ("S", "N"),
    "S": ("W", "E"),
    "W": ("N", "S"),
}

IN_SPILL = "inSpill"
VIS_MOVE = "vis_move"
VIS_SMALL_MOVE = "vis_smallMOVE"
VIS_SMALL_TURN = "vis_smallTURN"
CALIBRATED = "sensorsCalibrated"
SLIPPERY = "slippery"

CALIBRATE_SENSORS = "CALIBRATE_SENSORS"
ENABLE_FINE_SENSORS = "ENABLE_FINE_SENSORS"


def at(cell: Cell) -> str:
    return f"at_{cell[0]}_{cell[1]}"


def heading(h: str) -> str:
    return f"heading_{h}"


def fat(sub: Cell) -> str:
    return f"fat_{sub[0]}_{sub[1]}"


class GridSpec(BaseModel):
    """Grid scenario parameters; defaults give the built-in case study."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = "gridbot"
    cols: int = Field(default=6, ge=1)
    rows: int = Field(default=5, ge=1)
    fine_factor: int = Field(default=2, ge=1, description="Subcells per coarse cell per axis")
    spill_cells: FrozenSet[Cell] = frozenset({(2, 1), (3, 1), (2, 2)})
    blocked_cells: FrozenSet[Cell] = frozenset({(2, 0), (2, 3), (2, 4)})
    start: Cell = (0, 0)
    start_heading: str = "E"
    waypoint: Cell = (0, 0)
    waypoint_heading: str = "E"
    missions: Tuple[Cell, ...] = ((5, 2), (0, 4))
    siblings: bool = Field(default=False, description="Add the iceSheet and slipperySand rules")
    ice_cell: Cell = (4, 4)
    sand_cell: Cell = (5, 0)
    coarse_hidden_in_spill: bool = False
    policy: Optional[Dict[str, Tuple[str, str, str]]] = Field(
        default=None, description="Tag to (when, duration, mode); the analyzer default applies when empty"
    )
    seed: int = 0

    @property
    def sibling_cells(self) -> Dict[str, Cell]:
        if not self.siblings:
            return {}
        return {"iceSheet": self.ice_cell, "slipperySand": self.sand_cell}

    @property
    def slippery_cells(self) -> FrozenSet[Cell]:
        return self.spill_cells | frozenset(self.sibling_cells.values())


def _check(spec: GridSpec) -> None:
    def inside(cell: Cell) -> bool:
        return 0 <= cell[0] < spec.cols and 0 <= cell[1] < spec.rows

    for label, cells in (
        ("spill cell", spec.spill_cells),
        ("blocked cell", spec.blocked_cells),
        ("slippery cell", spec.slippery_cells),
        ("mission goal", spec.missions),
    ):
        for cell in sorted(cells):
            if not inside(cell):
                raise GridSpecError(f"{label} {cell} outside the {spec.cols}x{spec.rows} grid")
    if spec.slippery_cells & spec.blocked_cells:
        raise GridSpecError("a cell cannot be both slippery and blocked")
    for label, cell in (("start", spec.start), ("waypoint", spec.waypoint)):
        if not inside(cell):
            raise GridSpecError(f"{label} {cell} outside the grid")
        if cell in spec.blocked_cells:
            raise GridSpecError(f"{label} {cell} is blocked")
        if cell in spec.slippery_cells:
            raise GridSpecError(f"{label} {cell} lies in a slippery cell")
    for cell in spec.missions:
        if cell in spec.blocked_cells:
            raise GridSpecError(f"mission goal {cell} is blocked")
    for h in (spec.start_heading, spec.waypoint_heading):
        if h not in DELTAS:
            raise GridSpecError(f"unknown heading '{h}'")


class _Grid:
    """Cell geometry shared by the action generators."""

    def __init__(self, spec: GridSpec):
        self.spec = spec
        self.f = spec.fine_factor
        self.cells: List[Cell] = [
            (x, y)
            for y in range(spec.rows)
            for x in range(spec.cols)
            if (x, y) not in spec.blocked_cells
        ]
        self.cell_set: Set[Cell] = set(self.cells)
        self.slippery = spec.slippery_cells

    def subcells(self, cell: Cell) -> List[Cell]:
        """Fine subcells of ``cell`` in row-major order."""
        x, y = cell
        return [
            (x * self.f + i, y * self.f + j)
            for j in range(self.f)
            for i in range(self.f)
        ]

    def owner(self, sub: Cell) -> Cell:
        return (sub[0] // self.f, sub[1] // self.f)

    def fine_cells(self) -> List[Cell]:
        return [sub for cell in self.cells if cell in self.slippery for sub in self.subcells(cell)]


def _predicates(grid: _Grid) -> Tuple[str, ...]:
    names = [at(cell) for cell in grid.cells]
    names += [heading(h) for h in HEADINGS]
    names += [IN_SPILL]
    names += [fat(sub) for sub in grid.fine_cells()]
    names += [VIS_MOVE, VIS_SMALL_MOVE, VIS_SMALL_TURN, CALIBRATED]
    return tuple(names)


def _operational(name: str, visibility: str, pre, eff) -> Action:
    return Action(
        name=name,
        kind=ActionKind.OPERATIONAL,
        precondition=Condition.of(*pre),
        effect=Effect.of(*eff),
        visibility_predicate=visibility,
    )


def _coarse_actions(grid: _Grid) -> List[Action]:
    actions = []
    for cell in grid.cells:
        for h in HEADINGS:
            dx, dy = DELTAS[h]
            target = (cell[0] + dx, cell[1] + dy)
            if target not in grid.cell_set:
                continue
            actions.append(
                _operational(
                    f"MOVE_{h}_from_{cell[0]}_{cell[1]}",
                    VIS_MOVE,
                    [at(cell), heading(h), f"!{IN_SPILL}"],
                    [f"!{at(cell)}", at(target)],
                )
            )
    for h in HEADINGS:
        for h2 in ROTATIONS[h]:
            actions.append(
                _operational(
                    f"TURN_{h}_{h2}",
                    VIS_MOVE,
                    [heading(h), f"!{IN_SPILL}"],
                    [f"!{heading(h)}", heading(h2)],
                )
            )
    return actions


def _fine_actions(grid: _Grid) -> List[Action]:
    actions = []
    fine = set(grid.fine_cells())
    for sub in grid.fine_cells():
        here = grid.owner(sub)
        for h in HEADINGS:
            dx, dy = DELTAS[h]
            target = (sub[0] + dx, sub[1] + dy)
            there = grid.owner(target)
            if target[0] < 0 or target[1] < 0 or there not in grid.cell_set:
                continue
            eff = [f"!{fat(sub)}"]
            if target in fine:
                eff.append(fat(target))
            else:
                # leaving the slippery region restores coarse motion
                eff.append(f"!{IN_SPILL}")
            if there != here:
                eff += [f"!{at(here)}", at(there)]
            actions.append(
                _operational(
                    f"smallMOVE_{h}_from_{sub[0]}_{sub[1]}",
                    VIS_SMALL_MOVE,
                    [fat(sub), heading(h), IN_SPILL],
                    eff,
                )
            )
    if fine:
        for h in HEADINGS:
            for h2 in ROTATIONS[h]:
                actions.append(
                    _operational(
                        f"smallTURN_{h}_{h2}",
                        VIS_SMALL_TURN,
                        [heading(h), IN_SPILL],
                        [f"!{heading(h)}", heading(h2)],
                    )
                )
    return actions


def _empowering_actions() -> List[Action]:
    return [
        Action(CALIBRATE_SENSORS, ActionKind.EMPOWERING, effect=Effect.of(CALIBRATED)),
        Action(
            ENABLE_FINE_SENSORS,
            ActionKind.EMPOWERING,
            precondition=Condition.of(CALIBRATED),
            effect=Effect.of(VIS_SMALL_MOVE, VIS_SMALL_TURN),
        ),
    ]


def _slip_rule(name: str, cell: Cell, grid: _Grid, hide_coarse: bool) -> HazardRule:
    landing = grid.subcells(cell)[0]
    consequence = [IN_SPILL, fat(landing)]
    if hide_coarse:
        consequence.append(f"!{VIS_MOVE}")
    return HazardRule(
        name=name,
        source=Condition.of(at(cell), f"!{IN_SPILL}"),
        consequence=Effect.of(*consequence),
        tags=frozenset({SLIPPERY}),
    )


def _hazards(spec: GridSpec, grid: _Grid) -> Tuple[HazardRule, ...]:
    rules = [
        _slip_rule(f"oilSpill_{x}_{y}", (x, y), grid, spec.coarse_hidden_in_spill)
        for x, y in sorted(spec.spill_cells, key=lambda c: (c[1], c[0]))
    ]
    for name, cell in spec.sibling_cells.items():
        rules.append(_slip_rule(name, cell, grid, False))
    if spec.coarse_hidden_in_spill:
        rules.append(
            HazardRule(
                name="spillExit",
                source=Condition.of(f"!{IN_SPILL}", f"!{VIS_MOVE}"),
                consequence=Effect.of(VIS_MOVE),
                tags=frozenset({"exit"}),
            )
        )
    return tuple(rules)


def _policy(spec: GridSpec) -> AnalyzerPolicy:
    if not spec.policy:
        return AnalyzerPolicy()
    return AnalyzerPolicy(
        by_tag={
            tag: Recommendation(When(when), Duration(duration), PlanMode(mode))
            for tag, (when, duration, mode) in spec.policy.items()
        }
    )


def build(spec: Optional[GridSpec] = None) -> Scenario:
    """
    Ground a grid scenario.

    Args:
        spec: Grid parameters, the built-in case study when omitted

    Returns:
        The grounded scenario with grid rendering metadata

    Raises:
        GridSpecError: On out-of-bounds cells or a start inside a slippery cell
    """
    spec = spec or GridSpec()
    _check(spec)
    grid = _Grid(spec)

    predicates = _predicates(grid)
    actions = tuple(_coarse_actions(grid) + _fine_actions(grid) + _empowering_actions())
    waypoint = Condition.of(at(spec.waypoint), heading(spec.waypoint_heading), f"!{IN_SPILL}")
    domain = Domain(
        predicates=predicates,
        actions=actions,
        waypoints=(waypoint,),
        reset_policy=ResetPolicy(frozenset({VIS_MOVE, VIS_SMALL_MOVE, VIS_SMALL_TURN, CALIBRATED})),
    )
    hazards = _hazards(spec, grid)
    environment = Environment(
        initial_state=State.closed_world(predicates, {at(spec.start), heading(spec.start_heading), VIS_MOVE}),
        missions=tuple(
            Mission(goal=Condition.of(at(cell)), name=f"goto_{cell[0]}_{cell[1]}")
            for cell in spec.missions
        ),
        hazards=hazards,
        schedules={rule.name: HazardSchedule.always() for rule in hazards},
    )
    layout = GridLayout(
        cols=spec.cols,
        rows=spec.rows,
        fine_factor=spec.fine_factor,
        spill_cells=spec.spill_cells,
        blocked_cells=spec.blocked_cells,
        slippery_cells=spec.slippery_cells,
    )
    logger.debug("gridbot.built", name=spec.name, predicates=len(predicates), actions=len(actions))
    return Scenario(
        name=spec.name,
        domain=domain,
        environment=environment,
        policy=_policy(spec),
        seed=spec.seed,
        grid=layout,
    )


def mini_spec(blocked: bool = True, **overrides) -> GridSpec:
    """
    The 3x3 oracle-scale grid with one spill cell at (1, 0).

    With ``blocked`` the cells (1, 1) and (1, 2) are untraversable, so the
    spill lies on the only corridor between the left and right columns.
    """
    values = dict(
        name="gridbot-mini",
        cols=3,
        rows=3,
        fine_factor=2,
        spill_cells=frozenset({(1, 0)}),
        blocked_cells=frozenset({(1, 1), (1, 2)}) if blocked else frozenset(),
        start=(0, 0),
        waypoint=(0, 0),
        missions=((2, 0),),
    )
    values.update(overrides)
    return GridSpec(**values)


def build_mini(blocked: bool = True, **overrides) -> Scenario:
    return build(mini_spec(blocked=blocked, **overrides))


def cell_of(state: State) -> Optional[Cell]:
    """Coarse cell the robot occupies in ``state``."""
    for name in state.true:
        if name.startswith("at_"):
            _, x, y = name.split("_")
            return int(x), int(y)
    return None


def fine_of(state: State) -> Optional[Cell]:
    for name in state.true:
        if name.startswith("fat_"):
            _, x, y = name.split("_")
            return int(x), int(y)
    return None


def heading_of(state: State) -> Optional[str]:
    for h in HEADINGS:
        if heading(h) in state.true:
            return h
    return None


def is_small(action_name: str) -> bool:
    return action_name.startswith("smallMOVE_") or action_name.startswith("smallTURN_")
