"""
Search engines shared by every planner entry point.

Both engines expand actions in lexicographic name order, so equal requests
always produce the same plan. States are handled as frozensets of true
predicates; the public planner wraps them back into ``State`` values.
"""

import heapq
import itertools
from collections import deque
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import structlog

from afp.core.config import settings
from afp.core.exceptions import SearchBudgetExhausted
from afp.models.action import Action

logger = structlog.get_logger(__name__)

TrueSet = FrozenSet[str]
StatePredicate = Callable[[TrueSet], bool]


def ordered(actions: Iterable[Action]) -> Tuple[Action, ...]:
    return tuple(sorted(actions, key=lambda a: a.name))


def _reconstruct(parents: Dict[TrueSet, Tuple[Optional[TrueSet], Optional[Action]]], node: TrueSet) -> List[Action]:
    steps: List[Action] = []
    while True:
        parent, action = parents[node]
        if parent is None:
            break
        steps.append(action)
        node = parent
    steps.reverse()
    return steps


def breadth_first(
    start: TrueSet,
    is_goal: StatePredicate,
    actions: Sequence[Action],
    admissible: Optional[StatePredicate] = None,
    budget: Optional[int] = None,
) -> Optional[List[Action]]:
    """
    Shortest action sequence from ``start`` to a goal state.

    Args:
        start: True predicates of the start state
        is_goal: Goal test on true-predicate sets
        actions: Actions to expand, tried in name order
        admissible: States allowed on the path (start included); all when None
        budget: Maximum expansions, ``settings.SEARCH_NODE_BUDGET`` when None

    Returns:
        The action list, or None when no plan exists

    Raises:
        SearchBudgetExhausted: If the expansion budget runs out first
    """
    budget = budget if budget is not None else settings.SEARCH_NODE_BUDGET
    if admissible is not None and not admissible(start):
        return None
    if is_goal(start):
        return []

    actions = ordered(actions)
    parents: Dict[TrueSet, Tuple[Optional[TrueSet], Optional[Action]]] = {start: (None, None)}
    frontier = deque([start])
    expanded = 0
    while frontier:
        if expanded >= budget:
            raise SearchBudgetExhausted(budget, expanded)
        node = frontier.popleft()
        expanded += 1
        for action in actions:
            if not action.enabled(node):
                continue
            child = action.successor(node)
            if child in parents:
                continue
            if admissible is not None and not admissible(child):
                continue
            parents[child] = (node, action)
            if is_goal(child):
                logger.debug("search.found", expanded=expanded, length=len(parents))
                return _reconstruct(parents, child)
            frontier.append(child)
    logger.debug("search.exhausted_space", expanded=expanded)
    return None


def lexicographic_cost_search(
    start: TrueSet,
    is_goal: StatePredicate,
    actions: Sequence[Action],
    penalised: FrozenSet[Action],
    admissible: Optional[StatePredicate] = None,
    budget: Optional[int] = None,
) -> Optional[List[Action]]:
    """
    Plan minimising (occurrences of penalised actions, plan length).

    Dijkstra over the pair cost; ties between equal costs are broken by the
    order in which successors were generated, which follows action names.
    """
    budget = budget if budget is not None else settings.SEARCH_NODE_BUDGET
    if admissible is not None and not admissible(start):
        return None

    actions = ordered(actions)
    counter = itertools.count()
    best: Dict[TrueSet, Tuple[int, int]] = {start: (0, 0)}
    parents: Dict[TrueSet, Tuple[Optional[TrueSet], Optional[Action]]] = {start: (None, None)}
    heap: List[Tuple[int, int, int, TrueSet]] = [(0, 0, next(counter), start)]
    closed = set()
    expanded = 0
    while heap:
        penalty, length, _, node = heapq.heappop(heap)
        if node in closed:
            continue
        if is_goal(node):
            return _reconstruct(parents, node)
        closed.add(node)
        if expanded >= budget:
            raise SearchBudgetExhausted(budget, expanded)
        expanded += 1
        for action in actions:
            if not action.enabled(node):
                continue
            child = action.successor(node)
            if child in closed:
                continue
            if admissible is not None and not admissible(child):
                continue
            cost = (penalty + (1 if action in penalised else 0), length + 1)
            if child in best and best[child] <= cost:
                continue
            best[child] = cost
            parents[child] = (node, action)
            heapq.heappush(heap, (cost[0], cost[1], next(counter), child))
    return None
