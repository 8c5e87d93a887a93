"""
Strength: how many plans a system has available.

Reported as the number of achievable missions plus, per mission, the number
of distinct executable plans of length at most L whose final state satisfies
the goal. Plans are counted by memoised path counting over (state, remaining
length), never by listing them.
"""

from typing import Dict, Iterable, Optional, Sequence, Tuple

import structlog

from afp.core.config import settings
from afp.core.exceptions import DomainIntegrityError, SearchBudgetExhausted
from afp.models.action import Action
from afp.models.domain import Domain
from afp.models.literals import Condition
from afp.planner.planner import find_plan
from afp.planner.search import TrueSet, ordered
from afp.schemas.verdict import StrengthReport

from .missions import MissionCase

logger = structlog.get_logger(__name__)


class PlanCounter:
    """Counts goal-reaching action sequences of bounded length from a state."""

    def __init__(self, goal: Condition, actions: Sequence[Action], budget: int):
        self.goal = goal
        self.actions = ordered(actions)
        self.budget = budget
        self._memo: Dict[Tuple[TrueSet, int], int] = {}

    def count(self, true: TrueSet, remaining: int) -> int:
        # recursion depth is bounded by L
        key = (true, remaining)
        if key in self._memo:
            return self._memo[key]
        total = 1 if self.goal.holds_in(true) else 0
        if remaining > 0:
            for action in self.actions:
                if action.enabled(true):
                    total += self.count(action.successor(true), remaining - 1)
        if len(self._memo) >= self.budget:
            raise SearchBudgetExhausted(self.budget, len(self._memo))
        self._memo[key] = total
        return total


def strength_metric(
    domain: Domain,
    allowed_actions: Iterable[Action],
    missions: Sequence[MissionCase],
    bound: Optional[int] = None,
    *,
    budget: Optional[int] = None,
) -> StrengthReport:
    """
    Strength of ``allowed_actions`` over ``missions``.

    Args:
        bound: Plan length bound L, ``settings.STRENGTH_BOUND`` when omitted

    Raises:
        DomainIntegrityError: If an allowed action is not part of ``domain``
        SearchBudgetExhausted: If counting touches more (state, length) pairs than the budget
    """
    bound = bound if bound is not None else settings.STRENGTH_BOUND
    if bound < 0:
        raise ValueError("bound must be >= 0")
    budget = budget if budget is not None else settings.CLASSIFY_STATE_BUDGET
    actions = tuple(allowed_actions)
    foreign = sorted(a.name for a in actions if domain.action_map.get(a.name) != a)
    if foreign:
        raise DomainIntegrityError(f"Actions not in the domain: {foreign}")

    achievable = 0
    counts = []
    for case in missions:
        if find_plan(case.start, case.goal, actions) is not None:
            achievable += 1
        counts.append(PlanCounter(case.goal, actions, budget).count(case.start.true, bound))

    report = StrengthReport(
        bound=bound,
        mission_count=len(missions),
        achievable_missions=achievable,
        plan_counts=counts,
    )
    logger.debug("classifier.strength", bound=bound, achievable=achievable, plans=report.total_plans)
    return report
