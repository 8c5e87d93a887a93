"""
The planning game: the environment issues goals and fires hazards, the
autonomic manager plans and recovers.

Missions are issued in order and cycle when the list is shorter than
``max_missions``. A Snapshot is recorded before the first mission and after
every mission boundary, once deferred empowerment has run.
"""

from typing import Optional

import structlog

from afp.core.config import settings
from afp.models.scenario import Scenario
from afp.runtime import AutonomicManager, KnowledgeBase, MissionStatus
from afp.schemas.trace import GoalIssued, TraceDocument

from .schedule import HazardInjector
from .trace import TraceRecorder

logger = structlog.get_logger(__name__)


def run_game(
    scenario: Scenario,
    max_missions: Optional[int] = None,
    seed: Optional[int] = None,
    *,
    budget: Optional[int] = None,
) -> TraceDocument:
    """
    Play ``scenario`` and return the trace.

    Args:
        scenario: A validated scenario
        max_missions: Missions to issue; defaults to the configured maximum
        seed: Seed for probabilistic schedules; defaults to the scenario's

    Returns:
        The full trace of the run
    """
    max_missions = settings.MAX_MISSIONS if max_missions is None else max_missions
    seed = scenario.seed if seed is None else seed
    domain, env = scenario.domain, scenario.environment

    recorder = TraceRecorder(scenario, seed, max_missions)
    injector = HazardInjector(domain, env, seed=seed, sink=recorder)
    kb = KnowledgeBase.from_scenario(scenario)
    manager = AutonomicManager(kb, injector, env.initial_state, sink=recorder, budget=budget)

    recorder.snapshot(manager.state, kb.known_hazards())
    missions = env.missions
    statuses = []
    for index in range(max_missions if missions else 0):
        mission = missions[index % len(missions)]
        label = mission.label(index % len(missions))
        if mission.start is not None:
            manager.state = domain.state(mission.start)
        upcoming = [m.goal for m in missions[index % len(missions) + 1:]][: max_missions - index - 1]

        recorder.emit(GoalIssued, mission=label, index=index, goal=mission.goal.to_strings())
        statuses.append(manager.run_mission(label, mission.goal, upcoming))
        manager.drain_deferred()
        recorder.snapshot(manager.state, kb.known_hazards())

    logger.info(
        "game.finished",
        scenario=scenario.name,
        seed=seed,
        missions=len(statuses),
        completed=sum(s is MissionStatus.COMPLETED for s in statuses),
        events=len(recorder.events),
    )
    return recorder.document()
