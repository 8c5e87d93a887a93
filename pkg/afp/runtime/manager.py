"""
The autonomic manager: goal handling, the hazard protocol and visibility toggles.

On a goal the manager plans over the visible actions with the hazards it
knows about. On a hazard it first looks for a resilient plan it can follow
as-is; only when none exists does it consult the analyzer, find the plan
needing the fewest hidden actions, and make those actions visible through
an empowering plan, either now or at the next mission boundary.
"""

from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import structlog

from afp.core.config import settings
from afp.core.exceptions import DisciplineViolation, PreconditionViolation
from afp.models.domain import Domain
from afp.models.enums import Duration, PlanMode, VisibilityCause, When
from afp.models.hazard import HazardRule
from afp.models.literals import Condition
from afp.models.recommendation import Recommendation
from afp.models.semantics import reset_target
from afp.models.state import State
from afp.planner import (
    Plan,
    PlanRequest,
    achieve_predicates,
    find_plan_min_hidden,
    find_resilient_plan,
    ladder,
    path_of,
    plan_for_missions,
)
from afp.schemas.trace import (
    MissionAborted,
    MissionCompleted,
    PathologicalOutcome,
    PlanSynthesized,
    RecommendationChosen,
    ResetIssued,
    TaskQueued,
)

from .analyzer import Finding, analyze
from .executor import ExecutionOutcome, Stepper, execute
from .knowledge import DeferredTask, HazardRecord, KnowledgeBase
from .sink import NullSink, TraceSink, emit_visibility_changes

logger = structlog.get_logger(__name__)

# Hazards handled within one mission before it is declared pathological.
MAX_RECOVERIES = 32


class MissionStatus(str, Enum):
    COMPLETED = "Completed"
    ABORTED = "Aborted"
    PATHOLOGICAL = "Pathological"


@dataclass
class HazardResponse:
    """Plan to resume with, or the status the mission ended in."""

    plan: Optional[Plan] = None
    status: Optional[MissionStatus] = None


def toggle_visibility(domain: Domain, state: State, predicates: Iterable[str], value: bool) -> State:
    """
    Manager-side write of visibility predicates.

    Lowering is always allowed and lowering a false predicate is a no-op.

    Raises:
        DisciplineViolation: On any attempt to raise, or to touch a non-visibility predicate
    """
    names = sorted(set(predicates))
    foreign = [p for p in names if p not in domain.visibility_predicates]
    if foreign:
        raise DisciplineViolation(f"Not visibility predicates: {foreign}")
    if value:
        raise DisciplineViolation(
            f"The manager may not raise {names} directly; run an empowering plan instead"
        )
    return state.with_values(**{p: False for p in names})


def strongest_mode(recommendations: Iterable[Recommendation]) -> Optional[Recommendation]:
    """Robust beats Resilient; None when there is nothing to choose from."""
    chosen: Optional[Recommendation] = None
    for rec in recommendations:
        if chosen is None or (rec.mode is PlanMode.ROBUST and chosen.mode is not PlanMode.ROBUST):
            chosen = rec
    return chosen


class AutonomicManager:
    """
    Drives one agent through missions against an environment stepper.

    All knowledge-base mutations happen here. Deferred empowerment tasks are
    drained by the caller at mission boundaries via ``drain_deferred``.
    """

    def __init__(
        self,
        kb: KnowledgeBase,
        stepper: Stepper,
        state: State,
        *,
        sink: Optional[TraceSink] = None,
        budget: Optional[int] = None,
    ):
        self.kb = kb
        self.stepper = stepper
        self.state = state
        self.sink = sink or NullSink()
        self.budget = budget or settings.SEARCH_NODE_BUDGET
        self.mission: Optional[str] = None
        self.goal: Optional[Condition] = None
        self.plan: Optional[Plan] = None

    @property
    def domain(self) -> Domain:
        return self.kb.domain

    def _goal_recommendation(self) -> Optional[Recommendation]:
        return strongest_mode(self.kb.policy.recommend(rule.tags) for rule in self.kb.known_hazards())

    def _synthesized(self, purpose: str, mode: PlanMode, plan: Plan) -> None:
        self.sink.emit(
            PlanSynthesized, mission=self.mission or "", purpose=purpose, mode=mode.value, plan=plan.steps
        )

    # Goals

    def on_goal(self, mission: str, goal: Condition, upcoming: Sequence[Condition] = ()) -> Optional[Plan]:
        """
        Plan for a newly issued goal and install the plan.

        Robust plans are tried for this and the upcoming goals together before
        falling back to this goal's own ladder.

        Returns:
            The installed plan, or None when the goal is unreachable over the
            visible actions
        """
        self.mission, self.goal = mission, goal
        visible = self.kb.partition(self.state).visible
        known = self.kb.known_hazards()
        rec = self._goal_recommendation()
        requests = [PlanRequest(self.state, g, visible, known, rec) for g in (goal, *upcoming)]
        plan, rung = plan_for_missions(requests, budget=self.budget)[0]
        self.plan = plan
        if plan is None:
            logger.info("manager.no_plan", mission=mission)
            return None
        logger.info("manager.goal", mission=mission, mode=rung.value, length=len(plan), known=len(known))
        self._synthesized("mission", rung, plan)
        return plan

    def run_mission(self, mission: str, goal: Condition, upcoming: Sequence[Condition] = ()) -> MissionStatus:
        """Plan, execute and recover until the mission completes or is abandoned."""
        plan = self.on_goal(mission, goal, upcoming)
        if plan is None:
            self._pathological("no plan over the visible actions")
            return MissionStatus.PATHOLOGICAL

        for _ in range(MAX_RECOVERIES):
            outcome = self._execute(plan)
            if outcome.completed:
                self._complete()
                return MissionStatus.COMPLETED
            response = self.on_hazard(outcome.record)
            if response.plan is None:
                return response.status
            plan = response.plan

        self._pathological(f"more than {MAX_RECOVERIES} hazards in one mission")
        return MissionStatus.PATHOLOGICAL

    def _execute(self, plan: Plan, goal: Optional[Condition] = None) -> ExecutionOutcome:
        self.plan = plan
        goal = goal if goal is not None else self.goal
        outcome = execute(plan, self.state, self.stepper, self.kb, goal=goal, sink=self.sink)
        self.state = outcome.final
        return outcome

    def _complete(self) -> None:
        if self.kb.pending_toggles:
            self.toggle_visibility(sorted(self.kb.pending_toggles), False)
            self.kb.pending_toggles.clear()
        self.sink.emit(MissionCompleted, mission=self.mission or "")
        logger.info("manager.completed", mission=self.mission)

    # Hazards

    def on_hazard(self, record: HazardRecord) -> HazardResponse:
        """
        Respond to a halted execution.

        A resilient plan over the visible actions is used as-is when one
        exists. Otherwise each analyzer finding is handled in order until one
        yields a plan: find the plan with the fewest hidden actions, then make
        them visible now or defer that to the next mission boundary.
        """
        goal = self.goal
        # the record pairs e with c at injection time; recovery starts from where the agent is now
        observed = self.state
        matched = tuple(self.kb.rule(name) for name in record.matched_rules)
        part = self.kb.partition(observed)

        hazards = tuple(dict.fromkeys(self.kb.known_hazards() + matched))
        plan = find_resilient_plan(observed, goal, part.visible, hazards, budget=self.budget)
        if plan is not None:
            self.kb.learn(matched)
            logger.info("manager.recovery", mission=self.mission, length=len(plan))
            self._synthesized("recovery", PlanMode.RESILIENT, plan)
            return HazardResponse(plan=plan)

        for finding in analyze(self.kb, record):
            rec = finding.recommendation
            self.sink.emit(
                RecommendationChosen,
                hazards=finding.names,
                when=rec.when.value,
                duration=rec.duration.value,
                mode=rec.mode.value,
            )
            self.kb.learn(finding.hazards)
            response = self._handle_finding(finding, observed)
            if response is not None:
                return response

        self._pathological("no plan even with hidden actions")
        return HazardResponse(status=MissionStatus.PATHOLOGICAL)

    def _min_hidden(
        self, start: State, hazards: Tuple[HazardRule, ...], mode: PlanMode
    ) -> Optional[Tuple[Plan, FrozenSet[str], PlanMode]]:
        part = self.kb.partition(start)
        for rung in ladder(mode):
            result = find_plan_min_hidden(
                start, self.goal, part.visible, part.hidden, hazards, rung, budget=self.budget
            )
            if result is not None:
                return result.plan, result.visibility_predicates, rung
        return None

    def _handle_finding(self, finding: Finding, observed: State) -> Optional[HazardResponse]:
        rec = finding.recommendation
        found = self._min_hidden(observed, finding.hazards, rec.mode)
        if found is None:
            return None
        plan, needed, rung = found

        targets = frozenset(needed - self.kb.delegated_predicates() - observed.true)
        logger.info(
            "manager.hidden_plan",
            mission=self.mission,
            mode=rung.value,
            length=len(plan),
            targets=sorted(targets),
        )
        if not targets:
            self._synthesized("hidden", rung, plan)
            return HazardResponse(plan=plan)

        if rec.when is When.LATER:
            return self._reset_and_defer(targets, rec.duration)

        empowerment = achieve_predicates(
            observed, targets, self.kb.partition(observed).usable, budget=self.budget
        )
        if empowerment is None:
            logger.info("manager.empowerment_unreachable", targets=sorted(targets))
            return self._reset_and_defer(targets, rec.duration)

        self.kb.add_internal_goals(targets)
        raised = self._empower(empowerment, targets)
        if raised is None:
            return self._reset_and_defer(targets, rec.duration)
        if rec.duration is Duration.CURRENT:
            self.kb.pending_toggles |= raised

        plan = self._resume_plan(plan, finding.hazards, rung)
        if plan is None:
            return None
        self._synthesized("hidden", rung, plan)
        return HazardResponse(plan=plan)

    def _empower(self, plan: Plan, targets: FrozenSet[str]) -> Optional[FrozenSet[str]]:
        """Run an empowering plan; the visibility predicates it raised, or None if a hazard cut it short."""
        before = self.state
        self._synthesized("empowerment", PlanMode.PLAIN, plan)
        outcome = self._execute(plan, Condition.of(*sorted(targets)))
        if not outcome.completed:
            return None
        return frozenset((outcome.final.true - before.true) & self.domain.visibility_predicates)

    def _resume_plan(self, plan: Plan, hazards: Tuple[HazardRule, ...], rung: PlanMode) -> Optional[Plan]:
        """The recorded plan when it still reaches the goal from here, else a fresh one."""
        try:
            if self.goal.holds_in(path_of(plan, self.state).final.true):
                return plan
        except PreconditionViolation:
            pass
        found = self._min_hidden(self.state, hazards, rung)
        return found[0] if found is not None else None

    def _reset(self) -> None:
        target = reset_target(self.state, self.domain)
        self.sink.emit(ResetIssued, pre=self.state.digest(), post=target.digest())
        emit_visibility_changes(self.sink, self.domain, self.state, target, VisibilityCause.RESET)
        self.state = target

    def _reset_and_defer(self, targets: FrozenSet[str], duration: Duration) -> HazardResponse:
        self.kb.deferred.append(DeferredTask(targets, duration))
        self.kb.add_internal_goals(targets)
        self.sink.emit(TaskQueued, predicates=sorted(targets), duration=duration.value)
        self._reset()
        self.sink.emit(MissionAborted, mission=self.mission or "", reason="reset-to-waypoint")
        logger.info("manager.deferred", mission=self.mission, targets=sorted(targets))
        return HazardResponse(status=MissionStatus.ABORTED)

    def _pathological(self, reason: str) -> None:
        logger.warning("manager.pathological", mission=self.mission, reason=reason)
        self.sink.emit(PathologicalOutcome, mission=self.mission or "", reason=reason)
        self._reset()
        self.sink.emit(MissionAborted, mission=self.mission or "", reason="pathological")

    # Boundaries

    def drain_deferred(self) -> List[str]:
        """
        Run queued empowerment tasks; returns the predicates raised.

        Tasks whose predicates cannot be reached stay dropped and are logged.
        """
        raised: List[str] = []
        while self.kb.deferred:
            task = self.kb.deferred.popleft()
            targets = task.predicates - self.state.true
            if not targets:
                continue
            plan = achieve_predicates(
                self.state, targets, self.kb.partition(self.state).usable, budget=self.budget
            )
            if plan is None:
                logger.warning("manager.deferred_unreachable", targets=sorted(targets))
                continue
            gained = self._empower(plan, targets)
            if gained is None:
                logger.warning("manager.deferred_interrupted", targets=sorted(targets))
                continue
            if task.duration is Duration.CURRENT:
                self.kb.pending_toggles |= gained
            raised.extend(sorted(gained))
        return raised

    def toggle_visibility(self, predicates: Sequence[str], value: bool) -> State:
        """Lower visibility predicates in the current state, emitting ManagerToggle events."""
        updated = toggle_visibility(self.domain, self.state, predicates, value)
        emit_visibility_changes(self.sink, self.domain, self.state, updated, VisibilityCause.MANAGER_TOGGLE)
        self.state = updated
        return updated
