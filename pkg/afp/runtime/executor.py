"""
Executor: step a plan against the environment.

After each action the environment gets a chance to fire a hazard. Before
each action the monitor checks its precondition against the observed state;
a failure that the hazard-free run would not have hit halts execution with
a hazard record. Any other failure is a planner defect and raises.
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import structlog
from typing_extensions import Protocol

from afp.core.exceptions import StepFailure
from afp.models.enums import VisibilityCause
from afp.models.hazard import HazardRule
from afp.models.literals import Condition, parse_literal
from afp.models.semantics import applicable, apply
from afp.models.state import State
from afp.planner import Plan
from afp.schemas.trace import ActionExecuted, HazardDetected

from .knowledge import HazardRecord, KnowledgeBase
from .monitor import monitor_detect, record_hazard
from .sink import NullSink, TraceSink, emit_visibility_changes

logger = structlog.get_logger(__name__)


class Stepper(Protocol):
    """The environment side of a step."""

    def after_action(self, expected: State) -> Tuple[State, Optional[HazardRule]]:
        """Observed state after an action produced ``expected``, and the rule fired if any."""
        ...


class QuietStepper:
    """Environment that never fires a hazard."""

    def after_action(self, expected: State) -> Tuple[State, Optional[HazardRule]]:
        return expected, None


class OutcomeKind(str, Enum):
    COMPLETED = "Completed"
    HAZARD_HALT = "HazardHalt"


@dataclass(frozen=True)
class ExecutionOutcome:
    kind: OutcomeKind
    final: State
    executed: int
    record: Optional[HazardRecord] = None

    @property
    def completed(self) -> bool:
        return self.kind is OutcomeKind.COMPLETED


@dataclass(frozen=True)
class Injection:
    """A hazard the stepper reported: e, c and the rule, after plan step ``index``."""

    index: int
    expected: State
    observed: State
    rule: HazardRule


def _culprit(injections: List[Injection], failing: Tuple[str, ...]) -> Injection:
    """Latest injection whose consequence touches a failing literal, else the latest one."""
    predicates = {parse_literal(text).predicate for text in failing}
    for injection in reversed(injections):
        if injection.rule.consequence.predicates & predicates:
            return injection
    return injections[-1]


def _halt(
    kb: KnowledgeBase,
    sink: TraceSink,
    injection: Injection,
    current: State,
    index: int,
    mismatch: Tuple[str, ...],
) -> ExecutionOutcome:
    record = record_hazard(kb, injection.expected, injection.observed, index, mismatch)
    sink.emit(
        HazardDetected,
        step_index=index,
        pre=injection.expected.digest(),
        observed=injection.observed.digest(),
        matched_rules=list(record.matched_rules),
        mismatch=list(mismatch),
    )
    return ExecutionOutcome(OutcomeKind.HAZARD_HALT, current, index, record)


def execute(
    plan: Plan,
    start: State,
    stepper: Stepper,
    kb: KnowledgeBase,
    *,
    goal: Optional[Condition] = None,
    sink: Optional[TraceSink] = None,
) -> ExecutionOutcome:
    """
    Execute ``plan`` from ``start``.

    The plan is also followed on a hazard-free shadow state. A failure is
    attributed to the hazards injected so far only when the shadow state
    would not have failed; the record then carries the (e, c) pair of the
    responsible injection, and ``step_index`` is the step where it was noticed.

    Args:
        plan: Plan to run
        start: Observed state before the first step
        stepper: Environment consulted after every action
        kb: Knowledge base receiving hazard records
        goal: When given, a hazard that leaves the goal unsatisfied after the
            last step halts with a record indexed ``len(plan)``
        sink: Trace sink for ActionExecuted, visibility and detection events

    Returns:
        Completed with the final observed state, or HazardHalt with the record

    Raises:
        StepFailure: If a step (or the goal) fails and the hazard-free run
            would have failed the same way
    """
    sink = sink or NullSink()
    domain = kb.domain
    current = start
    shadow: Optional[State] = start
    injections: List[Injection] = []

    for index, action in enumerate(plan.actions):
        mismatch = monitor_detect(current, action)
        if mismatch is not None:
            if not injections or shadow is None or monitor_detect(shadow, action) is not None:
                raise StepFailure(index, action.name, mismatch)
            return _halt(kb, sink, _culprit(injections, mismatch), current, index, mismatch)

        expected = apply(current, action)
        sink.emit(ActionExecuted, action=action.name, pre=current.digest(), post=expected.digest())
        cause = VisibilityCause.EMPOWERING_ACTION if action.is_empowering else VisibilityCause.OPERATIONAL_ACTION
        emit_visibility_changes(sink, domain, current, expected, cause)
        # the hazard-free run can no longer be followed once it diverges from the plan
        shadow = apply(shadow, action) if shadow is not None and applicable(shadow, action) else None

        observed, fired = stepper.after_action(expected)
        if fired is not None:
            injections.append(Injection(index, expected, observed, fired))
        current = observed

    if goal is not None and not goal.holds_in(current.true):
        failing = tuple(str(lit) for lit in goal.violated_in(current.true))
        if not injections or shadow is None or not goal.holds_in(shadow.true):
            raise StepFailure(len(plan), "<goal>", failing)
        return _halt(kb, sink, _culprit(injections, failing), current, len(plan), failing)

    logger.debug("executor.completed", steps=len(plan), hazards=len(injections))
    return ExecutionOutcome(OutcomeKind.COMPLETED, current, len(plan))
