"""
Brute-force verification oracle.

Materialises the labelled state graph explicitly with networkx and applies
the plan and system definitions through graph set operations. It shares no
search code with the planner or the classifier, so it serves as ground truth
in tests.

Scopes:
    full       every valuation of the predicate set; refused above the limit
    reachable  the closure of the mission starts under the actions and the
               hazard consequences, for domains too large to enumerate
"""

from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set

import networkx as nx
import structlog

from afp.core.config import settings
from afp.core.exceptions import OracleLimitExceeded, SearchBudgetExhausted
from afp.models.action import Action
from afp.models.domain import Domain, Environment
from afp.models.hazard import HazardRule
from afp.models.literals import Condition
from afp.models.state import State
from afp.planner.planner import Plan
from afp.schemas.verdict import MissionEvidence, PlanVerdict, SystemVerdict

from .missions import MissionCase, env_missions
from .plans import fragility_witness, state_ref

logger = structlog.get_logger(__name__)

SCOPE_FULL = "full"
SCOPE_REACHABLE = "reachable"
_SINK = "__goal__"


def _all_valuations(predicates: Sequence[str]) -> List[FrozenSet[str]]:
    names = sorted(predicates)
    return [frozenset(chosen) for size in range(len(names) + 1) for chosen in combinations(names, size)]


def _closure(starts: Iterable[FrozenSet[str]], actions, hazards, budget: int) -> Set[FrozenSet[str]]:
    seen = set(starts)
    stack = list(seen)
    while stack:
        node = stack.pop()
        successors = [a.successor(node) for a in actions if a.precondition.holds_in(node)]
        successors += [r.consequence.override(node) for r in hazards if r.source.holds_in(node)]
        for child in successors:
            if child not in seen:
                if len(seen) >= budget:
                    raise SearchBudgetExhausted(budget, len(seen))
                seen.add(child)
                stack.append(child)
    return seen


class StateGraph:
    """The action graph S_Act over a fixed node set, plus hazard pairs."""

    def __init__(self, nodes: Iterable[FrozenSet[str]], actions: Sequence[Action], hazards: Sequence[HazardRule]):
        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(nodes)
        for node in list(self.graph.nodes):
            for action in actions:
                if action.precondition.holds_in(node):
                    self.graph.add_edge(node, action.successor(node), label=action.name)
        self.hazards = tuple(hazards)
        self.hazard_pairs = [
            (node, rule, rule.consequence.override(node))
            for node in self.graph.nodes
            for rule in self.hazards
            if rule.source.holds_in(node)
        ]
        self._can_reach: Dict[Condition, Set[FrozenSet[str]]] = {}

    def can_reach(self, goal: Condition) -> Set[FrozenSet[str]]:
        """Nodes with a path (possibly empty) to a goal node."""
        if goal not in self._can_reach:
            g = self.graph.copy()
            g.add_node(_SINK)
            g.add_edges_from((node, _SINK) for node in self.graph.nodes if goal.holds_in(node))
            self._can_reach[goal] = set(nx.ancestors(g, _SINK))
        return self._can_reach[goal]

    def reachable_from(self, start: FrozenSet[str]) -> Set[FrozenSet[str]]:
        return {start} | set(nx.descendants(self.graph, start))

    def has_path_within(self, start: FrozenSet[str], goal: Condition, allowed: Set[FrozenSet[str]]) -> bool:
        if start not in allowed:
            return False
        sub = self.graph.subgraph(allowed)
        reach = {start} | set(nx.descendants(sub, start))
        return any(goal.holds_in(node) for node in reach)

    def sources(self) -> Set[FrozenSet[str]]:
        return {node for node, _, _ in self.hazard_pairs}

    def unsafe(self, goal: Condition) -> Set[FrozenSet[str]]:
        """Sources with some consequence that cannot reach the goal."""
        reach = self.can_reach(goal)
        return {node for node, _, t in self.hazard_pairs if t not in reach}


def _build_graph(
    domain: Domain,
    actions: Sequence[Action],
    hazards: Sequence[HazardRule],
    starts: Iterable[FrozenSet[str]],
    scope: str,
    limit: Optional[int],
    budget: Optional[int],
) -> StateGraph:
    limit = limit if limit is not None else settings.ORACLE_PREDICATE_LIMIT
    budget = budget if budget is not None else settings.CLASSIFY_STATE_BUDGET
    if scope == SCOPE_FULL:
        if len(domain.predicates) > limit:
            raise OracleLimitExceeded(len(domain.predicates), limit)
        nodes: Iterable[FrozenSet[str]] = _all_valuations(domain.predicates)
    elif scope == SCOPE_REACHABLE:
        nodes = _closure(starts, actions, hazards, budget)
    else:
        raise ValueError(f"unknown oracle scope '{scope}'")
    graph = StateGraph(nodes, actions, hazards)
    logger.debug("oracle.graph", scope=scope, nodes=graph.graph.number_of_nodes(), edges=graph.graph.number_of_edges())
    return graph


def _evidence(graph: StateGraph, case: MissionCase) -> MissionEvidence:
    c = case.start.true
    reach_goal = graph.can_reach(case.goal)
    achievable = c in reach_goal
    nodes = set(graph.graph.nodes)
    robust = graph.has_path_within(c, case.goal, nodes - graph.sources())
    unsafe = graph.unsafe(case.goal)
    resilient_plan = graph.has_path_within(c, case.goal, nodes - unsafe)
    on_plan_paths = graph.reachable_from(c) & reach_goal
    bad = sorted(on_plan_paths & unsafe, key=sorted)
    witness = None
    if bad:
        source = bad[0]
        rule = next(
            r for n, r, t in sorted(graph.hazard_pairs, key=lambda p: (sorted(p[0]), p[1].name))
            if n == source and t not in reach_goal
        )
        witness = fragility_witness(None, State(true=source, universe=case.start.universe), rule)
    return MissionEvidence(
        mission=case.label,
        start=state_ref(case.start),
        goal=case.goal.to_strings(),
        achievable=achievable,
        unachievable=not achievable,
        has_robust_plan=robust,
        has_resilient_plan=resilient_plan,
        all_plans_resilient=not bad,
        unrecoverable=witness,
    )


def oracle_classify(
    domain: Domain,
    env: Environment,
    allowed_actions: Iterable[Action],
    hazards: Sequence[HazardRule],
    *,
    missions: Optional[Sequence[MissionCase]] = None,
    scope: str = SCOPE_FULL,
    limit: Optional[int] = None,
    budget: Optional[int] = None,
) -> SystemVerdict:
    """
    Ground-truth system verdict from the explicit state graph.

    Raises:
        OracleLimitExceeded: In full scope when the domain has more predicates than ``limit``
    """
    actions = tuple(sorted(allowed_actions))
    hazards = tuple(sorted(hazards))
    cases = list(missions) if missions is not None else env_missions(domain, env)
    graph = _build_graph(domain, actions, hazards, [case.start.true for case in cases], scope, limit, budget)
    evidence = [_evidence(graph, case) for case in cases]
    return SystemVerdict(
        fragile=any(not e.has_resilient_plan for e in evidence),
        robust=all(e.has_robust_plan for e in evidence),
        resilient=all(e.achievable and e.all_plans_resilient for e in evidence),
        hazards=[rule.name for rule in hazards],
        missions=evidence,
    )


def oracle_classify_plan(
    domain: Domain,
    plan: Plan,
    case: MissionCase,
    actions: Iterable[Action],
    hazards: Sequence[HazardRule],
    *,
    scope: str = SCOPE_FULL,
    limit: Optional[int] = None,
    budget: Optional[int] = None,
) -> PlanVerdict:
    """Ground-truth plan verdict: walk the plan's edges in the explicit graph."""
    actions = tuple(sorted(actions))
    hazards = tuple(sorted(hazards))
    graph = _build_graph(domain, actions, hazards, [case.start.true], scope, limit, budget)
    path = [case.start.true]
    for action in plan.actions:
        node = path[-1]
        if not action.precondition.holds_in(node):
            raise ValueError(f"plan step '{action.name}' not executable")
        path.append(action.successor(node))
    sources = graph.sources()
    unsafe = graph.unsafe(case.goal)
    return PlanVerdict(
        robust=not any(node in sources for node in path),
        resilient=not any(node in unsafe for node in path),
        fragile=any(node in unsafe for node in path),
        achieves_goal=case.goal.holds_in(path[-1]),
        plan=plan.steps,
    )
