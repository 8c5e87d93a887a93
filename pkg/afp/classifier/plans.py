"""
Plan classification.

A plan is robust when its path avoids every hazard source, fragile when some
hazard on its path leads to a state from which the goal is unreachable, and
resilient otherwise.
"""

from typing import Iterable, Optional, Sequence

import structlog

from afp.models.action import Action
from afp.models.hazard import HazardRule
from afp.models.literals import Condition
from afp.models.state import State
from afp.planner.planner import Plan, RecoveryCache, path_of
from afp.schemas.verdict import FragilityWitness, PlanVerdict, SourceWitness, StateRef

logger = structlog.get_logger(__name__)


def state_ref(state: State) -> StateRef:
    return StateRef(true=state.true_list(), digest=state.digest())


def fragility_witness(
    step: Optional[int], source: State, rule: HazardRule
) -> FragilityWitness:
    return FragilityWitness(
        step=step,
        state=state_ref(source),
        rule=rule.name,
        consequence=state_ref(source.overridden(rule.consequence)),
    )


def classify_plan(
    plan: Plan,
    c: State,
    goal: Condition,
    hazards: Sequence[HazardRule],
    actions: Iterable[Action],
    *,
    budget: Optional[int] = None,
) -> PlanVerdict:
    """
    Classify ``plan`` from ``c`` w.r.t. ``hazards``.

    Recovery from a consequence is a plan to ``goal`` over ``actions``.

    Raises:
        PreconditionViolation: If the plan is not executable from ``c``
    """
    path = path_of(plan, c)
    recovery = RecoveryCache(goal, actions, budget)
    first_source: Optional[SourceWitness] = None
    witness: Optional[FragilityWitness] = None

    for index, state in enumerate(path.states):
        matched = [rule for rule in hazards if rule.source.holds_in(state.true)]
        if not matched:
            continue
        if first_source is None:
            first_source = SourceWitness(
                step=index, state=state_ref(state), rules=sorted(rule.name for rule in matched)
            )
        for rule in sorted(matched):
            if not recovery.recoverable(rule.consequence.override(state.true)):
                witness = fragility_witness(index, state, rule)
                break
        if witness is not None:
            break

    fragile = witness is not None
    verdict = PlanVerdict(
        robust=first_source is None,
        resilient=not fragile,
        fragile=fragile,
        achieves_goal=path.final.satisfies(goal),
        plan=plan.steps,
        first_hazard_source=first_source,
        fragility_witness=witness,
    )
    logger.debug("classifier.plan", length=len(plan), robust=verdict.robust, fragile=fragile)
    return verdict
