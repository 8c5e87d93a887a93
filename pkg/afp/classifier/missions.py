"""Grounded missions fed to the classifier and the strength metric."""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

from afp.models.action import Action
from afp.models.domain import Domain, Environment
from afp.models.hazard import HazardRule
from afp.models.literals import Condition
from afp.models.scenario import Scenario
from afp.models.state import State

from .reachability import forward_closure


@dataclass(frozen=True)
class MissionCase:
    label: str
    start: State
    goal: Condition


def env_missions(domain: Domain, env: Environment, current: Optional[State] = None) -> List[MissionCase]:
    """The environment's missions; those without a start begin at ``current``."""
    grounded = env.ground_missions(domain, current)
    return [
        MissionCase(mission.label(index), start, goal)
        for index, (mission, (start, goal)) in enumerate(zip(env.missions, grounded))
    ]


def snapshot_missions(scenario: Scenario, state: State) -> List[MissionCase]:
    """Every goal pattern of the scenario, posed from a snapshot state."""
    cases = env_missions(scenario.domain, scenario.environment, current=state)
    cases += [
        MissionCase(f"waypoint-{index}", state, waypoint)
        for index, waypoint in enumerate(scenario.domain.waypoints)
    ]
    return cases


def hazard_recovery_missions(
    missions: Sequence[MissionCase],
    actions: Iterable[Action],
    hazards: Sequence[HazardRule],
    *,
    budget: Optional[int] = None,
) -> List[MissionCase]:
    """
    Missions posed from hazard consequences.

    For each mission, every hazard source reachable from its start over
    ``actions`` yields a mission from the consequence to the same goal. These
    measure how much capability survives a hazard.
    """
    actions = tuple(actions)
    derived: List[MissionCase] = []
    for case in missions:
        closure = forward_closure([case.start.true], actions, budget=budget)
        consequences = set()
        for true in closure:
            for rule in hazards:
                if rule.source.holds_in(true):
                    consequences.add(rule.consequence.override(true))
        for index, true in enumerate(sorted(consequences, key=sorted)):
            derived.append(
                MissionCase(
                    f"{case.label}/recovery-{index}",
                    State(true=true, universe=case.start.universe),
                    case.goal,
                )
            )
    return derived
