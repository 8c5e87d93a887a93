"""Tests for literals, states, actions, semantics and domain validation."""

import pytest

from afp.core.exceptions import DomainIntegrityError, PreconditionViolation
from afp.models.action import Action
from afp.models.domain import Domain, Environment, Mission, ResetPolicy
from afp.models.enums import ActionKind, Duration, PlanMode, When
from afp.models.hazard import HazardRule, HazardSchedule
from afp.models.literals import Condition, Effect, Literal, parse_literal
from afp.models.recommendation import AnalyzerPolicy, Recommendation
from afp.models.semantics import apply, applicable, hazard_consequence, partition_actions, reset_target
from afp.models.state import State
from afp.models.validation import (
    RULE_DECLARED_PREDICATES,
    RULE_TOTAL_RESET,
    RULE_VISIBILITY_WRITE,
    RULE_WAYPOINTS_ARE_GOALS,
    RULE_WELL_FORMED,
    validate_domain,
)

pytestmark = pytest.mark.unit

UNIVERSE = ("p", "q", "r", "vis")


def op(name, pre=(), eff=(), vis="vis"):
    return Action(name, ActionKind.OPERATIONAL, Condition.of(*pre), Effect.of(*eff), vis)


class TestLiterals:
    def test_parse_positive_and_negative(self):
        assert parse_literal("p") == Literal("p", True)
        assert parse_literal("!p") == Literal("p", False)
        assert str(Literal("q", False)) == "!q"

    @pytest.mark.parametrize("text", ["", "!", "  ! "])
    def test_parse_rejects_empty_names(self, text):
        with pytest.raises(DomainIntegrityError):
            parse_literal(text)

    def test_condition_holds_and_reports_violations(self):
        cond = Condition.of("p", "!q")
        assert cond.holds_in(frozenset({"p"}))
        assert not cond.holds_in(frozenset({"p", "q"}))
        assert [str(lit) for lit in cond.violated_in(frozenset({"q"}))] == ["p", "!q"]

    def test_effect_override_keeps_unmentioned_predicates(self):
        eff = Effect.of("q", "!p")
        assert eff.override(frozenset({"p", "r"})) == frozenset({"q", "r"})

    def test_consistency(self):
        assert Condition.of("p", "!q").is_consistent()
        assert not Condition.of("p", "!p").is_consistent()


class TestState:
    def test_closed_world_rejects_unknown_predicates(self):
        with pytest.raises(DomainIntegrityError):
            State.closed_world(UNIVERSE, {"zzz"})

    def test_equality_ignores_universe(self):
        a = State.closed_world(UNIVERSE, {"p"})
        b = State.closed_world(UNIVERSE + ("extra",), {"p"})
        assert a == b
        assert hash(a) == hash(b)

    def test_digest_is_stable_and_distinguishes(self):
        a = State.closed_world(UNIVERSE, {"p", "q"})
        b = State.closed_world(UNIVERSE, {"q", "p"})
        c = State.closed_world(UNIVERSE, {"p"})
        assert a.digest() == b.digest()
        assert a.digest() != c.digest()
        assert len(a.digest()) == 16

    def test_literals_lists_every_predicate(self):
        state = State.closed_world(UNIVERSE, {"q"})
        assert state.literals() == ["!p", "q", "!r", "!vis"]

    def test_value_of_unknown_predicate(self):
        with pytest.raises(DomainIntegrityError):
            State.closed_world(UNIVERSE).value("nope")


class TestSemantics:
    def test_apply_overrides_effect(self):
        s = State.closed_world(UNIVERSE, {"p", "vis"})
        t = apply(s, op("a", pre=["p"], eff=["!p", "q"]))
        assert t.true == frozenset({"q", "vis"})

    def test_apply_inapplicable_names_failing_literals(self):
        s = State.closed_world(UNIVERSE, {"q"})
        with pytest.raises(PreconditionViolation) as exc:
            apply(s, op("a", pre=["p", "!q"]))
        assert exc.value.failing == ["p", "!q"]
        assert exc.value.error_code == "PRECONDITION_VIOLATION"

    def test_applicable_checks_universe(self):
        s = State.closed_world(UNIVERSE)
        with pytest.raises(DomainIntegrityError):
            applicable(s, op("a", pre=["ghost"]))

    def test_empty_precondition_always_applicable(self):
        s = State.closed_world(UNIVERSE)
        assert applicable(s, op("a", eff=["p"]))

    def test_partition_follows_visibility_predicates(self):
        empower = Action("E", ActionKind.EMPOWERING, effect=Effect.of("vis"))
        a = op("a")
        b = op("b", vis="r")
        domain = Domain(predicates=UNIVERSE, actions=(empower, a, b))
        part = partition_actions(domain.state({"vis"}), domain)
        assert part.empowering == frozenset({empower})
        assert part.visible == frozenset({a})
        assert part.hidden == frozenset({b})
        assert part.usable == frozenset({empower, a})
        assert part.names()["hidden"] == ["b"]

    def test_partition_is_a_disjoint_cover(self, gridbot):
        part = partition_actions(gridbot.environment.initial_state, gridbot.domain)
        sets = [part.empowering, part.visible, part.hidden]
        assert sum(len(s) for s in sets) == len(gridbot.domain.actions)
        assert frozenset().union(*sets) == frozenset(gridbot.domain.actions)

    def test_hazard_consequence(self):
        rule = HazardRule("h", Condition.of("p"), Effect.of("!p", "r"))
        s = State.closed_world(UNIVERSE, {"p"})
        assert hazard_consequence(rule, s).true == frozenset({"r"})
        assert hazard_consequence(rule, State.closed_world(UNIVERSE)) is None


class TestResetPolicy:
    def test_reset_keeps_preserved_predicates(self):
        domain = Domain(
            predicates=UNIVERSE,
            actions=(),
            waypoints=(Condition.of("p", "!q"),),
            reset_policy=ResetPolicy(frozenset({"vis"})),
        )
        s = domain.state({"q", "r", "vis"})
        assert reset_target(s, domain).true == frozenset({"p", "vis"})

    def test_state_already_at_waypoint_is_kept(self):
        domain = Domain(predicates=UNIVERSE, actions=(), waypoints=(Condition.of("p"),))
        s = domain.state({"p", "r"})
        assert reset_target(s, domain) == s

    def test_no_waypoints_is_not_total(self):
        domain = Domain(predicates=UNIVERSE, actions=())
        with pytest.raises(DomainIntegrityError):
            reset_target(domain.state(), domain)


class TestSchedulesAndPolicy:
    def test_schedule_parameters_are_checked(self):
        with pytest.raises(ValueError):
            HazardSchedule.nth_match(0)
        with pytest.raises(ValueError):
            HazardSchedule.probability(1.5)
        assert HazardSchedule.probability(0.0).p == 0.0

    def test_recommendation_rejects_plain(self):
        with pytest.raises(ValueError):
            Recommendation(mode=PlanMode.PLAIN)

    def test_policy_lookup_by_sorted_tag_then_default(self):
        later = Recommendation(When.LATER, Duration.CURRENT, PlanMode.ROBUST)
        policy = AnalyzerPolicy(by_tag={"water": later})
        assert policy.recommend({"zeta", "water"}) is later
        assert policy.recommend({"fire"}) == Recommendation()
        assert policy.recommend(()).as_tuple() == ("Now", "All", "Resilient")


class TestValidation:
    def _env(self, domain, missions=()):
        return Environment(initial_state=domain.state({"vis"}), missions=missions)

    def test_valid_domain_has_no_violations(self, corridor):
        assert validate_domain(corridor.domain, corridor.environment) == []

    def test_operational_action_raising_visibility(self):
        domain = Domain(
            predicates=UNIVERSE,
            actions=(op("a", eff=["r"]), op("b", vis="r")),
            waypoints=(Condition.of("p"),),
        )
        rules = {v.rule for v in validate_domain(domain, self._env(domain))}
        assert RULE_VISIBILITY_WRITE in rules

    def test_lowering_visibility_is_allowed(self):
        domain = Domain(
            predicates=UNIVERSE, actions=(op("a", eff=["!vis"]),), waypoints=(Condition.of("p"),)
        )
        assert validate_domain(domain, self._env(domain)) == []

    def test_undeclared_predicates(self):
        domain = Domain(predicates=UNIVERSE, actions=(op("a", pre=["ghost"]),), waypoints=(Condition.of("p"),))
        violations = validate_domain(domain, self._env(domain))
        assert [v.rule for v in violations] == [RULE_DECLARED_PREDICATES]
        assert "ghost" in violations[0].detail

    def test_missing_waypoints(self):
        domain = Domain(predicates=UNIVERSE, actions=())
        assert RULE_TOTAL_RESET in {v.rule for v in validate_domain(domain, self._env(domain))}

    def test_waypoints_must_be_goal_patterns(self):
        domain = Domain(predicates=UNIVERSE, actions=(), waypoints=(Condition.of("p"),))
        env = Environment(
            initial_state=domain.state(),
            missions=(Mission(Condition.of("q")),),
            goal_patterns=(Condition.of("q"),),
        )
        assert [v.rule for v in validate_domain(domain, env)] == [RULE_WAYPOINTS_ARE_GOALS]

    def test_malformed_actions(self):
        bad = (
            op("a", vis=None),
            Action("e", ActionKind.EMPOWERING, visibility_predicate="vis"),
            op("a"),
            op("c", pre=["p", "!p"]),
        )
        domain = Domain(predicates=UNIVERSE, actions=bad, waypoints=(Condition.of("p"),))
        violations = [v for v in validate_domain(domain, self._env(domain)) if v.rule == RULE_WELL_FORMED]
        details = " ".join(v.detail for v in violations)
        assert "without visibility predicate" in details
        assert "empowering action with visibility predicate" in details
        assert "duplicate action name" in details
        assert "both polarities" in details

    def test_empty_hazard_consequence(self):
        domain = Domain(predicates=UNIVERSE, actions=(), waypoints=(Condition.of("p"),))
        env = Environment(
            initial_state=domain.state(),
            hazards=(HazardRule("h", Condition.of("p"), Effect()),),
        )
        assert any("empty consequence" in v.detail for v in validate_domain(domain, env))

    def test_builtin_grids_are_valid(self, gridbot, mini, mini_open):
        for scenario in (gridbot, mini, mini_open):
            assert validate_domain(scenario.domain, scenario.environment) == []
