"""
Transition semantics of the domain.

Pure functions over immutable values: applicability, override application,
the empowering/visible/hidden action partition, hazard consequences and the
reset target.
"""

from typing import FrozenSet, NamedTuple, Optional

from afp.core.exceptions import DomainIntegrityError, PreconditionViolation
from afp.models.action import Action
from afp.models.domain import Domain
from afp.models.hazard import HazardRule
from afp.models.state import State


class ActionPartition(NamedTuple):
    empowering: FrozenSet[Action]
    visible: FrozenSet[Action]
    hidden: FrozenSet[Action]

    @property
    def usable(self) -> FrozenSet[Action]:
        """Actions the planner may use: visible plus empowering."""
        return self.visible | self.empowering

    def names(self) -> dict:
        return {
            "empowering": sorted(a.name for a in self.empowering),
            "visible": sorted(a.name for a in self.visible),
            "hidden": sorted(a.name for a in self.hidden),
        }


def _check_universe(state: State, action: Action) -> None:
    unknown = action.precondition.predicates - state.universe
    unknown |= action.effect.predicates - state.universe
    if unknown:
        raise DomainIntegrityError(
            f"Action '{action.name}' references undeclared predicates {sorted(unknown)}"
        )


def applicable(state: State, action: Action) -> bool:
    """
    Whether every literal of the action's precondition holds in ``state``.

    Raises:
        DomainIntegrityError: If the action mentions predicates outside the state's universe
    """
    _check_universe(state, action)
    return action.enabled(state.true)


def apply(state: State, action: Action) -> State:
    """
    Apply ``action`` to ``state``: effect literals override, everything else is kept.

    Raises:
        PreconditionViolation: If the action is not applicable, carrying the failing literals
    """
    _check_universe(state, action)
    failing = action.precondition.violated_in(state.true)
    if failing:
        raise PreconditionViolation(action.name, [str(lit) for lit in failing])
    return State(true=action.successor(state.true), universe=state.universe)


def partition_actions(state: State, domain: Domain) -> ActionPartition:
    """Split the domain's actions into empowering, visible and hidden sets for ``state``."""
    empowering, visible, hidden = set(), set(), set()
    for action in domain.actions:
        if action.is_empowering:
            empowering.add(action)
        elif action.visibility_predicate in state.true:
            visible.add(action)
        else:
            hidden.add(action)
    return ActionPartition(frozenset(empowering), frozenset(visible), frozenset(hidden))


def hazard_consequence(rule: HazardRule, state: State) -> Optional[State]:
    """The consequence of ``rule`` fired in ``state``, or None when the source does not match."""
    if not rule.source.holds_in(state.true):
        return None
    return state.overridden(rule.consequence)


def matching_rules(rules, state: State):
    """Rules whose source matches ``state``, in the given order."""
    return [rule for rule in rules if rule.source.holds_in(state.true)]


def reset_target(state: State, domain: Domain) -> State:
    """
    Waypoint state the reset action moves ``state`` to.

    Raises:
        DomainIntegrityError: If the reset policy is not total
    """
    return domain.reset_policy.target(state, domain.waypoints)
