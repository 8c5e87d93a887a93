"""
System classification.

For every mission (c, g):

* all plans are fragile iff no resilient plan exists (a non-fragile plan is
  resilient by definition), so fragility needs no plan enumeration;
* the mission is robust iff a robust plan exists;
* every plan is resilient iff no state that is both reachable from c and able
  to reach g has an unrecoverable hazard consequence. Plans may revisit
  states, so any such state lies on some plan path.

Missions with no plan at all are reported fragile and flagged unachievable.
"""

from typing import Iterable, List, Optional, Sequence

import structlog

from afp.models.action import Action
from afp.models.domain import Domain, Environment
from afp.models.hazard import HazardRule
from afp.models.state import State
from afp.planner.planner import RecoveryCache, find_resilient_plan, find_robust_plan
from afp.schemas.verdict import FragilityWitness, MissionEvidence, SystemVerdict

from .missions import MissionCase, env_missions
from .plans import fragility_witness, state_ref
from .reachability import forward_closure, goal_region

logger = structlog.get_logger(__name__)


def _first_unrecoverable(region, hazards, recovery: RecoveryCache, universe) -> Optional[FragilityWitness]:
    for true in sorted(region, key=sorted):
        for rule in sorted(hazards):
            if rule.source.holds_in(true) and not recovery.recoverable(rule.consequence.override(true)):
                return fragility_witness(None, State(true=true, universe=universe), rule)
    return None


def mission_evidence(
    case: MissionCase,
    actions: Sequence[Action],
    hazards: Sequence[HazardRule],
    *,
    budget: Optional[int] = None,
    state_budget: Optional[int] = None,
) -> MissionEvidence:
    """Classification facts for a single mission."""
    closure = forward_closure([case.start.true], actions, budget=state_budget)
    region = goal_region(closure, actions, case.goal.holds_in)
    achievable = case.start.true in region

    robust_plan = find_robust_plan(case.start, case.goal, actions, hazards, budget=budget)
    resilient_plan = find_resilient_plan(case.start, case.goal, actions, hazards, budget=budget)
    recovery = RecoveryCache(case.goal, actions, budget)
    unrecoverable = _first_unrecoverable(region, hazards, recovery, case.start.universe) if achievable else None

    return MissionEvidence(
        mission=case.label,
        start=state_ref(case.start),
        goal=case.goal.to_strings(),
        achievable=achievable,
        unachievable=not achievable,
        has_robust_plan=robust_plan is not None,
        has_resilient_plan=resilient_plan is not None,
        all_plans_resilient=unrecoverable is None,
        robust_plan_length=len(robust_plan) if robust_plan is not None else None,
        resilient_plan_length=len(resilient_plan) if resilient_plan is not None else None,
        unrecoverable=unrecoverable,
    )


def verdict_from_evidence(evidence: List[MissionEvidence], hazards: Iterable[HazardRule]) -> SystemVerdict:
    fragile = any(not e.has_resilient_plan for e in evidence)
    return SystemVerdict(
        fragile=fragile,
        robust=all(e.has_robust_plan for e in evidence),
        resilient=all(e.achievable and e.all_plans_resilient for e in evidence),
        hazards=sorted(rule.name for rule in hazards),
        missions=evidence,
    )


def classify_system(
    domain: Domain,
    env: Environment,
    allowed_actions: Iterable[Action],
    hazards: Sequence[HazardRule],
    *,
    missions: Optional[Sequence[MissionCase]] = None,
    budget: Optional[int] = None,
    state_budget: Optional[int] = None,
) -> SystemVerdict:
    """
    Classify the system w.r.t. ``hazards`` over ``allowed_actions``.

    Args:
        missions: Missions to quantify over, the environment's when omitted

    Raises:
        SearchBudgetExhausted: If a mission's reachable fragment exceeds the state budget
    """
    actions = tuple(sorted(allowed_actions))
    hazards = tuple(sorted(hazards))
    cases = list(missions) if missions is not None else env_missions(domain, env)
    evidence = [
        mission_evidence(case, actions, hazards, budget=budget, state_budget=state_budget)
        for case in cases
    ]
    verdict = verdict_from_evidence(evidence, hazards)
    logger.info(
        "classifier.system",
        missions=len(cases),
        hazards=len(hazards),
        fragile=verdict.fragile,
        robust=verdict.robust,
        resilient=verdict.resilient,
    )
    return verdict
