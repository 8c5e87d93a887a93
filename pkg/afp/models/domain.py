"""
Planning domains and the environments they play against.

A ``Domain`` is the agent side: predicates, ground actions, waypoints and the
reset policy. An ``Environment`` is the other side of the game: the initial
state, the missions it issues, and the hazard rules it may fire.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from afp.core.exceptions import DomainIntegrityError
from afp.models.action import Action
from afp.models.hazard import HazardRule, HazardSchedule
from afp.models.literals import Condition
from afp.models.state import State


@dataclass(frozen=True)
class ResetPolicy:
    """
    Deterministic total map from states to waypoint states.

    ``preserve`` names predicates that survive a reset (typically visibility and
    calibration predicates); all other predicates are projected onto the
    nearest waypoint pattern.
    """

    preserve: FrozenSet[str] = frozenset()

    def target(self, state: State, waypoints: Tuple[Condition, ...]) -> State:
        if not waypoints:
            raise DomainIntegrityError("Reset policy is not total: no waypoints declared")
        for waypoint in waypoints:
            if state.satisfies(waypoint):
                return state

        best: Optional[State] = None
        best_distance = -1
        for waypoint in waypoints:
            if not waypoint.is_consistent():
                continue
            kept = (state.true & self.preserve) - waypoint.negatives
            candidate = State(true=kept | waypoint.positives, universe=state.universe)
            distance = len((state.true ^ candidate.true) - self.preserve)
            if best is None or distance < best_distance:
                best, best_distance = candidate, distance
        if best is None:
            raise DomainIntegrityError("Reset policy is not total: every waypoint is inconsistent")
        return best


@dataclass(frozen=True)
class Domain:
    """Predicates, ground actions, waypoints and reset policy."""

    predicates: Tuple[str, ...]
    actions: Tuple[Action, ...]
    waypoints: Tuple[Condition, ...] = ()
    reset_policy: ResetPolicy = ResetPolicy()

    @cached_property
    def predicate_set(self) -> FrozenSet[str]:
        return frozenset(self.predicates)

    @cached_property
    def action_map(self) -> Dict[str, Action]:
        return {action.name: action for action in self.actions}

    @cached_property
    def visibility_predicates(self) -> FrozenSet[str]:
        return frozenset(
            a.visibility_predicate for a in self.actions if a.visibility_predicate is not None
        )

    def action(self, name: str) -> Action:
        try:
            return self.action_map[name]
        except KeyError:
            raise DomainIntegrityError(f"Unknown action '{name}'") from None

    def actions_named(self, names: Iterable[str]) -> FrozenSet[Action]:
        return frozenset(self.action(name) for name in names)

    def state(self, true: Iterable[str] = ()) -> State:
        """Closed-world state over this domain's predicates."""
        return State.closed_world(self.predicate_set, true)

    def check_literals(self, entity: str, predicates: Iterable[str]) -> None:
        unknown = sorted(set(predicates) - self.predicate_set)
        if unknown:
            raise DomainIntegrityError(f"{entity} references undeclared predicates {unknown}")


@dataclass(frozen=True)
class Mission:
    """A goal the environment issues, optionally from a fixed start state."""

    goal: Condition
    start: Optional[FrozenSet[str]] = None
    name: Optional[str] = None

    def label(self, index: int) -> str:
        return self.name or f"mission-{index}"


@dataclass(frozen=True)
class Environment:
    """Initial state, missions, hazard rules and their schedules."""

    initial_state: State
    missions: Tuple[Mission, ...] = ()
    hazards: Tuple[HazardRule, ...] = ()
    schedules: Mapping[str, HazardSchedule] = field(default_factory=dict, compare=False, hash=False)
    goal_patterns: Optional[Tuple[Condition, ...]] = None

    @cached_property
    def hazard_map(self) -> Dict[str, HazardRule]:
        return {rule.name: rule for rule in self.hazards}

    def goals(self, domain: Domain) -> Tuple[Condition, ...]:
        """The goal patterns G; defaults to mission goals plus the waypoints."""
        if self.goal_patterns is not None:
            return self.goal_patterns
        return tuple(m.goal for m in self.missions) + tuple(domain.waypoints)

    def schedule_for(self, rule_name: str) -> HazardSchedule:
        return self.schedules.get(rule_name, HazardSchedule.always())

    def rules_tagged(self, tags: Iterable[str]) -> Tuple[HazardRule, ...]:
        wanted = set(tags)
        return tuple(rule for rule in self.hazards if rule.tags & wanted)

    def ground_missions(self, domain: Domain, current: Optional[State] = None) -> List[Tuple[State, Condition]]:
        """
        Ground every mission to a (start state, goal) pair.

        Missions without an explicit start begin at ``current`` (the initial
        state when omitted).
        """
        origin = current if current is not None else self.initial_state
        grounded = []
        for mission in self.missions:
            start = domain.state(mission.start) if mission.start is not None else origin
            grounded.append((start, mission.goal))
        return grounded
