"""Tests for the bounded plan-counting strength metric."""

import pytest

from afp.classifier import MissionCase, hazard_recovery_missions, strength_metric
from afp.classifier.strength import PlanCounter
from afp.core.exceptions import DomainIntegrityError, SearchBudgetExhausted
from afp.models.action import Action
from afp.models.enums import ActionKind
from afp.models.literals import Condition
from afp.models.semantics import partition_actions

pytestmark = pytest.mark.unit

AT_2_0 = Condition.of("at_2_0")


def _missions(scenario, state):
    visible = partition_actions(state, scenario.domain).visible
    base = [MissionCase("goto", state, AT_2_0)]
    return visible, base + hazard_recovery_missions(base, visible, scenario.environment.hazards)


class TestPlanCounter:
    def test_counts_every_goal_state_along_the_way(self, robust_not_resilient):
        start = robust_not_resilient.environment.initial_state
        counter = PlanCounter(Condition.of("goal"), robust_not_resilient.domain.actions, budget=1000)
        # to_a/a_goal and to_b/b_goal; nothing is enabled once the goal holds
        assert counter.count(start.true, 1) == 0
        assert counter.count(start.true, 2) == 2
        assert counter.count(start.true, 10) == 2

    def test_goal_at_start_counts_the_empty_plan(self, robust_not_resilient):
        start = robust_not_resilient.environment.initial_state
        counter = PlanCounter(Condition.of("start"), robust_not_resilient.domain.actions, budget=1000)
        assert counter.count(start.true, 0) == 1

    def test_budget(self, mini):
        start = mini.environment.initial_state
        counter = PlanCounter(AT_2_0, mini.domain.actions, budget=3)
        with pytest.raises(SearchBudgetExhausted):
            counter.count(start.true, 6)


class TestStrengthMetric:
    def test_empowerment_strictly_increases_strength(self, mini):
        s0 = mini.environment.initial_state
        s1 = s0.with_values(sensorsCalibrated=True, vis_smallMOVE=True, vis_smallTURN=True)

        visible0, missions0 = _missions(mini, s0)
        visible1, missions1 = _missions(mini, s1)
        before = strength_metric(mini.domain, visible0, missions0, bound=6)
        after = strength_metric(mini.domain, visible1, missions1, bound=6)

        assert before.mission_count == after.mission_count == 5
        assert after.achievable_missions > before.achievable_missions
        assert after.total_plans > before.total_plans
        assert before.plan_counts[1:] == [0, 0, 0, 0]
        assert all(count > 0 for count in after.plan_counts)

    def test_bound_zero(self, mini):
        start = mini.environment.initial_state
        missions = [MissionCase("here", start, Condition.of("at_0_0")), MissionCase("there", start, AT_2_0)]
        report = strength_metric(mini.domain, mini.domain.actions, missions, bound=0)
        assert report.plan_counts == [1, 0]
        assert report.achievable_missions == 2

    def test_longer_bound_never_counts_fewer_plans(self, mini):
        start = mini.environment.initial_state
        missions = [MissionCase("there", start, AT_2_0)]
        counts = [strength_metric(mini.domain, mini.domain.actions, missions, bound=b).total_plans for b in range(6)]
        assert counts == sorted(counts)

    def test_rejects_foreign_actions(self, mini):
        stranger = Action("teleport", ActionKind.EMPOWERING)
        with pytest.raises(DomainIntegrityError):
            strength_metric(mini.domain, [stranger], [], bound=2)

    def test_rejects_negative_bound(self, mini):
        with pytest.raises(ValueError):
            strength_metric(mini.domain, mini.domain.actions, [], bound=-1)

    def test_more_actions_never_count_fewer_plans(self, mini):
        start = mini.environment.initial_state
        missions = [MissionCase("there", start, AT_2_0), MissionCase("home", start, Condition.of("at_0_0"))]
        actions = sorted(mini.domain.actions)
        counts = [
            strength_metric(mini.domain, actions[:size], missions, bound=5).plan_counts
            for size in range(0, len(actions) + 1, 4)
        ]
        for smaller, larger in zip(counts, counts[1:]):
            assert all(a <= b for a, b in zip(smaller, larger))

    @pytest.mark.slow
    def test_empowerment_at_the_default_bound(self, mini):
        s0 = mini.environment.initial_state
        s1 = s0.with_values(sensorsCalibrated=True, vis_smallMOVE=True, vis_smallTURN=True)
        visible0, missions0 = _missions(mini, s0)
        visible1, missions1 = _missions(mini, s1)
        before = strength_metric(mini.domain, visible0, missions0, bound=10)
        after = strength_metric(mini.domain, visible1, missions1, bound=10)
        assert after.achievable_missions > before.achievable_missions
        assert all(b <= a for b, a in zip(before.plan_counts, after.plan_counts))
        assert after.total_plans > before.total_plans
