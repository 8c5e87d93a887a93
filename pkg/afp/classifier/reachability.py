"""
Explicit reachability over the states an action set can reach.

``forward_closure`` materialises the reachable fragment once; the backward
pass then finds every state in it from which a goal is reachable. Because the
closure is closed under the actions, the backward pass never misses a path.
"""

from collections import deque
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set

from afp.core.config import settings
from afp.core.exceptions import SearchBudgetExhausted
from afp.models.action import Action
from afp.planner.search import StatePredicate, TrueSet, ordered


def forward_closure(
    starts: Iterable[TrueSet],
    actions: Sequence[Action],
    *,
    budget: Optional[int] = None,
) -> Set[TrueSet]:
    """
    Every state reachable from ``starts``, starts included.

    Raises:
        SearchBudgetExhausted: If more than ``budget`` states are found
    """
    budget = budget if budget is not None else settings.CLASSIFY_STATE_BUDGET
    actions = ordered(actions)
    seen: Set[TrueSet] = set(starts)
    frontier = deque(seen)
    while frontier:
        node = frontier.popleft()
        for action in actions:
            if action.enabled(node):
                child = action.successor(node)
                if child not in seen:
                    if len(seen) >= budget:
                        raise SearchBudgetExhausted(budget, len(seen))
                    seen.add(child)
                    frontier.append(child)
    return seen


def predecessors(closure: Set[TrueSet], actions: Sequence[Action]) -> Dict[TrueSet, List[TrueSet]]:
    """Reverse edges of the action graph restricted to ``closure``."""
    reverse: Dict[TrueSet, List[TrueSet]] = {node: [] for node in closure}
    for node in closure:
        for action in actions:
            if action.enabled(node):
                child = action.successor(node)
                if child in reverse:
                    reverse[child].append(node)
    return reverse


def goal_region(closure: Set[TrueSet], actions: Sequence[Action], is_goal: StatePredicate) -> FrozenSet[TrueSet]:
    """States of ``closure`` from which some goal state is reachable."""
    reverse = predecessors(closure, actions)
    region = {node for node in closure if is_goal(node)}
    frontier = deque(region)
    while frontier:
        node = frontier.popleft()
        for parent in reverse[node]:
            if parent not in region:
                region.add(parent)
                frontier.append(parent)
    return frozenset(region)
