"""
Scenario repository: load, ground, validate and save scenario documents.
"""

from pathlib import Path
from typing import Dict, List, Tuple, Union

import structlog

from afp.core.config import settings
from afp.core.exceptions import ScenarioValidationError
from afp.models.action import Action
from afp.models.domain import Domain, Environment, Mission, ResetPolicy
from afp.models.enums import ActionKind, Duration, PlanMode, Trigger, When
from afp.models.hazard import HazardRule, HazardSchedule
from afp.models.literals import Condition, Effect, parse_literal
from afp.models.recommendation import DEFAULT_RECOMMENDATION, AnalyzerPolicy, Recommendation
from afp.models.scenario import GridLayout, Scenario
from afp.models.state import State
from afp.models.validation import Violation, validate_domain
from afp.schemas.scenario import (
    DEFAULT_POLICY_KEY,
    ActionDocument,
    GridDocument,
    HazardDocument,
    MissionDocument,
    RecommendationDocument,
    ResetDocument,
    ScenarioDocument,
    ScheduleDocument,
)

from .base import DocumentRepository, Source

logger = structlog.get_logger(__name__)


def _true_names(literals: List[str]) -> frozenset:
    parsed = [parse_literal(text) for text in literals]
    return frozenset(lit.predicate for lit in parsed if lit.polarity)


def _recommendation(doc: RecommendationDocument) -> Recommendation:
    return Recommendation(When(doc.when), Duration(doc.duration), PlanMode(doc.mode))


def _cells(cells) -> frozenset:
    return frozenset((int(x), int(y)) for x, y in cells)


class ScenarioRepository(DocumentRepository[ScenarioDocument]):
    """
    Repository converting scenario documents to grounded ``Scenario`` values and back.
    """

    def __init__(self):
        super().__init__(ScenarioDocument)

    def to_scenario(self, doc: ScenarioDocument) -> Tuple[Scenario, List[Violation]]:
        """
        Ground a document into a scenario without raising on violations.

        Returns:
            The scenario and its validation violations
        """
        actions = tuple(
            Action(
                name=a.name,
                kind=ActionKind(a.kind),
                precondition=Condition.of(*a.pre),
                effect=Effect.of(*a.eff),
                visibility_predicate=a.visible_if,
            )
            for a in doc.actions
        )
        domain = Domain(
            predicates=tuple(doc.predicates),
            actions=actions,
            waypoints=tuple(Condition.of(*w) for w in doc.waypoints),
            reset_policy=ResetPolicy(frozenset(doc.reset.preserve)),
        )
        hazards = tuple(
            HazardRule(
                name=h.name,
                source=Condition.of(*h.source),
                consequence=Effect.of(*h.effect),
                tags=frozenset(h.tags),
            )
            for h in doc.hazards
        )
        schedules: Dict[str, HazardSchedule] = {
            h.name: HazardSchedule(Trigger(h.schedule.trigger), n=h.schedule.n, p=h.schedule.p)
            for h in doc.hazards
        }
        missions = tuple(
            Mission(
                goal=Condition.of(*m.goal),
                start=_true_names(m.start) if m.start is not None else None,
                name=m.name,
            )
            for m in doc.missions
        )
        # Unchecked on purpose: undeclared names surface as rule (b) violations.
        initial = State(true=_true_names(doc.initial_state), universe=domain.predicate_set)
        environment = Environment(
            initial_state=initial,
            missions=missions,
            hazards=hazards,
            schedules=schedules,
            goal_patterns=tuple(Condition.of(*g) for g in doc.goals) if doc.goals is not None else None,
        )
        default = doc.policy.get(DEFAULT_POLICY_KEY)
        policy = AnalyzerPolicy(
            by_tag={tag: _recommendation(rec) for tag, rec in doc.policy.items() if tag != DEFAULT_POLICY_KEY},
            default=_recommendation(default) if default is not None else DEFAULT_RECOMMENDATION,
        )
        grid = None
        if doc.grid is not None:
            grid = GridLayout(
                cols=doc.grid.cols,
                rows=doc.grid.rows,
                fine_factor=doc.grid.fine_factor,
                spill_cells=_cells(doc.grid.spill_cells),
                blocked_cells=_cells(doc.grid.blocked_cells),
                slippery_cells=_cells(doc.grid.slippery_cells),
            )
        scenario = Scenario(
            name=doc.name,
            domain=domain,
            environment=environment,
            policy=policy,
            seed=doc.seed if doc.seed is not None else settings.DEFAULT_SEED,
            grid=grid,
        )
        return scenario, validate_domain(domain, environment)

    def to_document(self, scenario: Scenario) -> ScenarioDocument:
        domain, env = scenario.domain, scenario.environment
        policy = {
            tag: RecommendationDocument(when=rec.when, duration=rec.duration, mode=rec.mode)
            for tag, rec in sorted(scenario.policy.by_tag.items())
        }
        if scenario.policy.default != DEFAULT_RECOMMENDATION:
            rec = scenario.policy.default
            policy[DEFAULT_POLICY_KEY] = RecommendationDocument(when=rec.when, duration=rec.duration, mode=rec.mode)
        grid = None
        if scenario.grid is not None:
            g = scenario.grid
            grid = GridDocument(
                cols=g.cols,
                rows=g.rows,
                fine_factor=g.fine_factor,
                spill_cells=sorted(g.spill_cells),
                blocked_cells=sorted(g.blocked_cells),
                slippery_cells=sorted(g.slippery_cells),
            )
        return ScenarioDocument(
            name=scenario.name,
            predicates=list(domain.predicates),
            actions=[
                ActionDocument(
                    name=a.name,
                    kind=a.kind,
                    visible_if=a.visibility_predicate,
                    pre=a.precondition.to_strings(),
                    eff=a.effect.to_strings(),
                )
                for a in domain.actions
            ],
            waypoints=[w.to_strings() for w in domain.waypoints],
            reset=ResetDocument(preserve=sorted(domain.reset_policy.preserve)),
            initial_state=env.initial_state.true_list(),
            missions=[
                MissionDocument(
                    goal=m.goal.to_strings(),
                    start=sorted(m.start) if m.start is not None else None,
                    name=m.name,
                )
                for m in env.missions
            ],
            hazards=[
                HazardDocument(
                    name=h.name,
                    source=h.source.to_strings(),
                    effect=h.consequence.to_strings(),
                    tags=sorted(h.tags),
                    schedule=ScheduleDocument(
                        trigger=env.schedule_for(h.name).trigger,
                        n=env.schedule_for(h.name).n,
                        p=env.schedule_for(h.name).p,
                    ),
                )
                for h in env.hazards
            ],
            goals=[g.to_strings() for g in env.goal_patterns] if env.goal_patterns is not None else None,
            policy=policy,
            seed=scenario.seed,
            grid=grid,
        )


_repository = ScenarioRepository()


def load_scenario(document: Source) -> Scenario:
    """
    Parse, ground and validate a scenario document.

    Args:
        document: Path, JSON text or decoded mapping

    Returns:
        A validated scenario

    Raises:
        ScenarioParseError: On malformed input, with line/column when known
        ScenarioValidationError: Listing every validation violation together
    """
    scenario, violations = _repository.to_scenario(_repository.parse(document))
    if violations:
        logger.warning("scenario.invalid", scenario=scenario.name, violations=len(violations))
        raise ScenarioValidationError(violations)
    logger.debug("scenario.loaded", scenario=scenario.name, actions=len(scenario.domain.actions))
    return scenario


def check_scenario(document: Source) -> Tuple[Scenario, List[Violation]]:
    """Parse and ground a document, returning violations instead of raising on them."""
    return _repository.to_scenario(_repository.parse(document))


def dump_scenario(scenario: Scenario) -> str:
    return _repository.dumps(_repository.to_document(scenario))


def save_scenario(scenario: Scenario, path: Union[str, Path]) -> Path:
    return _repository.save(_repository.to_document(scenario), path)
