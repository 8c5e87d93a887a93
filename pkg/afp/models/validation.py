"""
Structural validation of a domain against its environment.

Violations are data: ``validate_domain`` never raises, it returns every
problem it finds so loaders can report them together.
"""

from dataclasses import dataclass
from typing import Iterable, List

from afp.models.domain import Domain, Environment
from afp.models.enums import ActionKind
from afp.models.literals import LiteralSet

RULE_VISIBILITY_WRITE = "a"
RULE_DECLARED_PREDICATES = "b"
RULE_TOTAL_RESET = "c"
RULE_WAYPOINTS_ARE_GOALS = "d"
RULE_WELL_FORMED = "e"


@dataclass(frozen=True)
class Violation:
    rule: str
    entity: str
    detail: str

    def __str__(self) -> str:
        return f"[{self.rule}] {self.entity}: {self.detail}"


def _undeclared(entity: str, predicates: Iterable[str], declared) -> List[Violation]:
    unknown = sorted(set(predicates) - declared)
    if not unknown:
        return []
    return [Violation(RULE_DECLARED_PREDICATES, entity, f"undeclared predicates {unknown}")]


def _inconsistent(entity: str, literals: LiteralSet) -> List[Violation]:
    if literals.is_consistent():
        return []
    both = sorted(literals.positives & literals.negatives)
    return [Violation(RULE_WELL_FORMED, entity, f"predicates with both polarities {both}")]


def validate_domain(domain: Domain, env: Environment) -> List[Violation]:
    """
    Check the visibility-write discipline and the structural rules.

    Rules:
        (a) no Operational action raises a visibility predicate
        (b) every literal references a declared predicate
        (c) the reset policy is total onto the waypoints
        (d) the waypoints are goal patterns
        (e) names, conditions and effects are well formed

    Returns:
        Violations in a deterministic order; empty iff the domain is valid
    """
    violations: List[Violation] = []
    declared = domain.predicate_set
    visibility = domain.visibility_predicates

    if len(declared) != len(domain.predicates):
        violations.append(Violation(RULE_WELL_FORMED, "predicates", "duplicate predicate names"))
    if any(not name for name in domain.predicates):
        violations.append(Violation(RULE_WELL_FORMED, "predicates", "empty predicate name"))

    seen_actions = set()
    for action in domain.actions:
        entity = f"action {action.name}"
        if action.name in seen_actions:
            violations.append(Violation(RULE_WELL_FORMED, entity, "duplicate action name"))
        seen_actions.add(action.name)

        if action.kind is ActionKind.OPERATIONAL and action.visibility_predicate is None:
            violations.append(Violation(RULE_WELL_FORMED, entity, "operational action without visibility predicate"))
        if action.kind is ActionKind.EMPOWERING and action.visibility_predicate is not None:
            violations.append(Violation(RULE_WELL_FORMED, entity, "empowering action with visibility predicate"))

        violations += _undeclared(entity, action.predicates, declared)
        violations += _inconsistent(f"{entity} precondition", action.precondition)
        violations += _inconsistent(f"{entity} effect", action.effect)

        if action.kind is ActionKind.OPERATIONAL:
            raised = sorted(action.effect.positives & visibility)
            if raised:
                violations.append(
                    Violation(RULE_VISIBILITY_WRITE, entity, f"operational effect raises visibility {raised}")
                )

    seen_hazards = set()
    for rule in env.hazards:
        entity = f"hazard {rule.name}"
        if rule.name in seen_hazards:
            violations.append(Violation(RULE_WELL_FORMED, entity, "duplicate hazard name"))
        seen_hazards.add(rule.name)
        violations += _undeclared(entity, rule.predicates, declared)
        violations += _inconsistent(f"{entity} source", rule.source)
        violations += _inconsistent(f"{entity} consequence", rule.consequence)
        if len(rule.consequence) == 0:
            violations.append(Violation(RULE_WELL_FORMED, entity, "empty consequence"))

    if not domain.waypoints:
        violations.append(Violation(RULE_TOTAL_RESET, "reset", "no waypoints declared"))
    elif not any(w.is_consistent() for w in domain.waypoints):
        violations.append(Violation(RULE_TOTAL_RESET, "reset", "no consistent waypoint to reset to"))
    violations += [
        Violation(RULE_TOTAL_RESET, v.entity, v.detail)
        for v in _undeclared("reset", domain.reset_policy.preserve, declared)
    ]
    for index, waypoint in enumerate(domain.waypoints):
        entity = f"waypoint {index}"
        violations += _undeclared(entity, waypoint.predicates, declared)
        violations += _inconsistent(entity, waypoint)

    if env.goal_patterns is not None:
        for index, pattern in enumerate(env.goal_patterns):
            violations += _undeclared(f"goal {index}", pattern.predicates, declared)
            violations += _inconsistent(f"goal {index}", pattern)

    goals = set(env.goals(domain))
    for index, waypoint in enumerate(domain.waypoints):
        if waypoint not in goals:
            violations.append(Violation(RULE_WAYPOINTS_ARE_GOALS, f"waypoint {index}", "not among the goal patterns"))

    for index, mission in enumerate(env.missions):
        entity = f"mission {mission.label(index)}"
        violations += _undeclared(entity, mission.goal.predicates, declared)
        violations += _inconsistent(entity, mission.goal)
        if mission.start is not None:
            violations += _undeclared(f"{entity} start", mission.start, declared)

    violations += _undeclared("initial_state", env.initial_state.true, declared)
    return violations
