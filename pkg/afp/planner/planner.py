"""
Plan synthesis over a supplied action subset.

Shortest plans, robust plans (paths avoid every hazard source), resilient
plans (every hazard on the path leaves the goal reachable), plans using the
fewest hidden actions, internal-goal plans for visibility predicates, and the
Robust → Resilient → Plain fallback ladder.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import structlog

from afp.core.exceptions import PreconditionViolation
from afp.models.action import Action
from afp.models.enums import PlanMode
from afp.models.hazard import HazardRule
from afp.models.literals import Condition, Literal
from afp.models.recommendation import Recommendation
from afp.models.semantics import apply
from afp.models.state import State
from afp.planner.search import TrueSet, breadth_first, lexicographic_cost_search

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class Plan:
    """Ordered ground actions; ``steps`` gives their names."""

    actions: Tuple[Action, ...] = ()

    @property
    def steps(self) -> List[str]:
        return [action.name for action in self.actions]

    def __len__(self) -> int:
        return len(self.actions)

    def __iter__(self):
        return iter(self.actions)


@dataclass(frozen=True)
class Path:
    """States visited by a plan, start included (``len(states) == len(plan) + 1``)."""

    states: Tuple[State, ...]

    @property
    def final(self) -> State:
        return self.states[-1]


@dataclass(frozen=True)
class PlanRequest:
    start: State
    goal: Condition
    actions: FrozenSet[Action]
    hazards: Tuple[HazardRule, ...] = ()
    recommendation: Optional[Recommendation] = None


@dataclass(frozen=True)
class MinHiddenResult:
    plan: Plan
    used_hidden: FrozenSet[Action]

    @property
    def visibility_predicates(self) -> FrozenSet[str]:
        """Pred_v(h): visibility predicates of the hidden actions the plan uses."""
        return frozenset(a.visibility_predicate for a in self.used_hidden if a.visibility_predicate)


class RecoveryCache:
    """
    Memoised "goal still reachable" test for hazard consequences.

    Scoped to one goal and one action set; create one per planning call so
    results never depend on interleaving with other searches.
    """

    def __init__(self, goal: Condition, actions: Iterable[Action], budget: Optional[int] = None):
        self.goal = goal
        self.actions = tuple(actions)
        self.budget = budget
        self._memo: Dict[TrueSet, bool] = {}

    def recoverable(self, true: TrueSet) -> bool:
        if true not in self._memo:
            plan = breadth_first(true, self.goal.holds_in, self.actions, budget=self.budget)
            self._memo[true] = plan is not None
        return self._memo[true]


def _non_source(hazards: Sequence[HazardRule]):
    def admissible(true: TrueSet) -> bool:
        return not any(rule.source.holds_in(true) for rule in hazards)

    return admissible


def _safe(hazards: Sequence[HazardRule], recovery: RecoveryCache):
    def admissible(true: TrueSet) -> bool:
        for rule in hazards:
            if rule.source.holds_in(true) and not recovery.recoverable(rule.consequence.override(true)):
                return False
        return True

    return admissible


def _wrap(steps: Optional[List[Action]]) -> Optional[Plan]:
    return Plan(tuple(steps)) if steps is not None else None


def find_plan(
    c: State,
    goal: Condition,
    actions: Iterable[Action],
    *,
    budget: Optional[int] = None,
) -> Optional[Plan]:
    """
    Shortest plan from ``c`` to a state satisfying ``goal``.

    Ties between equal-length plans are broken by action name at each
    expansion. Returns None iff no plan exists over ``actions``.
    """
    return _wrap(breadth_first(c.true, goal.holds_in, tuple(actions), budget=budget))


def path_of(plan: Plan, c: State) -> Path:
    """
    States visited by executing ``plan`` from ``c``.

    Raises:
        PreconditionViolation: If a step is inapplicable, naming its index
    """
    states = [c]
    for index, action in enumerate(plan.actions):
        try:
            states.append(apply(states[-1], action))
        except PreconditionViolation as exc:
            raise PreconditionViolation(action.name, exc.failing, step_index=index) from None
    return Path(tuple(states))


def find_robust_plan(
    c: State,
    goal: Condition,
    actions: Iterable[Action],
    hazards: Sequence[HazardRule],
    *,
    budget: Optional[int] = None,
) -> Optional[Plan]:
    """Shortest plan whose path, start included, contains no hazard-source state."""
    hazards = tuple(hazards)
    admissible = _non_source(hazards) if hazards else None
    return _wrap(breadth_first(c.true, goal.holds_in, tuple(actions), admissible=admissible, budget=budget))


def find_resilient_plan(
    c: State,
    goal: Condition,
    actions: Iterable[Action],
    hazards: Sequence[HazardRule],
    *,
    budget: Optional[int] = None,
) -> Optional[Plan]:
    """
    Shortest plan where every hazard source on the path has recoverable consequences.

    Recovery is reachability of ``goal`` over the same action set.
    """
    actions = tuple(actions)
    hazards = tuple(hazards)
    admissible = _safe(hazards, RecoveryCache(goal, actions, budget)) if hazards else None
    return _wrap(breadth_first(c.true, goal.holds_in, actions, admissible=admissible, budget=budget))


def find_plan_min_hidden(
    c: State,
    goal: Condition,
    visible: Iterable[Action],
    hidden: Iterable[Action],
    hazards: Sequence[HazardRule],
    mode: PlanMode,
    *,
    budget: Optional[int] = None,
) -> Optional[MinHiddenResult]:
    """
    Plan over visible and hidden actions with the fewest hidden-action occurrences.

    Cost is lexicographic: hidden occurrences first, then length. In Robust
    mode the path must avoid hazard sources; in Resilient mode every source on
    the path must be recoverable over the combined action set; Plain ignores
    hazards.
    """
    hidden = frozenset(hidden)
    combined = tuple(set(visible) | hidden)
    hazards = tuple(hazards)
    admissible = None
    if hazards and mode is PlanMode.ROBUST:
        admissible = _non_source(hazards)
    elif hazards and mode is PlanMode.RESILIENT:
        admissible = _safe(hazards, RecoveryCache(goal, combined, budget))

    steps = lexicographic_cost_search(
        c.true, goal.holds_in, combined, hidden, admissible=admissible, budget=budget
    )
    if steps is None:
        return None
    used = frozenset(action for action in steps if action in hidden)
    logger.debug("planner.min_hidden", mode=mode.value, length=len(steps), hidden=len(used))
    return MinHiddenResult(Plan(tuple(steps)), used)


def achieve_predicates(
    c: State,
    targets: Iterable[str],
    actions: Iterable[Action],
    *,
    budget: Optional[int] = None,
) -> Optional[Plan]:
    """Shortest plan making every predicate in ``targets`` true (internal goals)."""
    goal = Condition(frozenset(Literal(name, True) for name in targets))
    return find_plan(c, goal, actions, budget=budget)


_LADDERS = {
    PlanMode.ROBUST: (PlanMode.ROBUST, PlanMode.RESILIENT, PlanMode.PLAIN),
    PlanMode.RESILIENT: (PlanMode.RESILIENT, PlanMode.PLAIN),
    PlanMode.PLAIN: (PlanMode.PLAIN,),
}


def ladder(mode: PlanMode) -> Tuple[PlanMode, ...]:
    """Rungs tried, in order, for a requested mode."""
    return _LADDERS[mode]


def plan_in_mode(
    c: State,
    goal: Condition,
    actions: Iterable[Action],
    hazards: Sequence[HazardRule],
    mode: PlanMode,
    *,
    budget: Optional[int] = None,
) -> Optional[Plan]:
    if mode is PlanMode.ROBUST:
        return find_robust_plan(c, goal, actions, hazards, budget=budget)
    if mode is PlanMode.RESILIENT:
        return find_resilient_plan(c, goal, actions, hazards, budget=budget)
    return find_plan(c, goal, actions, budget=budget)


def plan_with_recommendation(
    req: PlanRequest, *, budget: Optional[int] = None
) -> Tuple[Optional[Plan], PlanMode]:
    """
    Best-effort plan following the recommendation's fallback ladder.

    Robust tries robust, resilient, then plain; Resilient tries resilient then
    plain. A missing recommendation is treated as Robust.

    Returns:
        The plan (None when nothing is reachable) and the rung that succeeded
        (Plain when none did)
    """
    requested = req.recommendation.mode if req.recommendation else PlanMode.ROBUST
    for rung in ladder(requested):
        plan = plan_in_mode(req.start, req.goal, req.actions, req.hazards, rung, budget=budget)
        if plan is not None:
            logger.debug("planner.ladder", requested=requested.value, achieved=rung.value, length=len(plan))
            return plan, rung
    return None, PlanMode.PLAIN


def plan_for_missions(
    requests: Sequence[PlanRequest], *, budget: Optional[int] = None
) -> List[Tuple[Optional[Plan], PlanMode]]:
    """
    Plan a batch of missions, preferring robust plans for all of them.

    When every mission admits a robust plan those are returned; otherwise each
    mission falls back to its own recommendation ladder.
    """
    robust = [
        find_robust_plan(r.start, r.goal, r.actions, r.hazards, budget=budget) for r in requests
    ]
    if all(plan is not None for plan in robust):
        return [(plan, PlanMode.ROBUST) for plan in robust]
    logger.info("planner.missions_fallback", missions=len(requests), robust=sum(p is not None for p in robust))
    return [plan_with_recommendation(r, budget=budget) for r in requests]
