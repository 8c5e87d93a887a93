"""Tests for the MAPE-K components: monitor, analyzer, executor, knowledge and manager."""

import pytest

from afp.core.exceptions import DisciplineViolation, StepFailure
from afp.models.enums import Duration, PlanMode, When
from afp.models.literals import Condition
from afp.models.recommendation import Recommendation
from afp.planner import Plan
from afp.repositories import load_scenario
from afp.runtime import (
    AutonomicManager,
    HazardRecord,
    KnowledgeBase,
    MissionStatus,
    OutcomeKind,
    QuietStepper,
    analyze,
    execute,
    monitor_detect,
    record_hazard,
    strongest_mode,
    synthesize_rule,
    toggle_visibility,
)
from afp.scenarios import GridSpec, build
from afp.simulation import HazardInjector, TraceRecorder

pytestmark = pytest.mark.unit


def _plan(scenario, *names):
    return Plan(tuple(scenario.domain.action(n) for n in names))


@pytest.fixture
def corridor_kb(corridor):
    return KnowledgeBase.from_scenario(corridor)


@pytest.fixture
def flooded(corridor):
    return corridor.domain.state({"at_b", "wet", "vis_walk"})


class TestMonitor:
    def test_applicable_action_passes(self, corridor):
        start = corridor.environment.initial_state
        assert monitor_detect(start, corridor.domain.action("walk_a_b")) is None

    def test_mismatch_lists_violated_literals(self, corridor, flooded):
        assert monitor_detect(flooded, corridor.domain.action("walk_b_c")) == ("!wet",)

    def test_known_hazard_is_matched(self, corridor, corridor_kb, flooded):
        dry = flooded.with_values(wet=False)
        record = record_hazard(corridor_kb, dry, flooded, 1, ("!wet",))
        assert record.matched_rules == ("flood",)
        assert record.known
        assert corridor_kb.history == [record]

    def test_unexplained_hazard_is_still_recorded(self, corridor, corridor_kb):
        e = corridor.domain.state({"at_a", "vis_walk"})
        c = corridor.domain.state({"at_c", "vis_walk"})
        record = record_hazard(corridor_kb, e, c, 0)
        assert record.matched_rules == ()
        assert not record.known
        assert len(corridor_kb.history) == 1


class TestAnalyzer:
    def test_unknown_hazard_gets_a_synthetic_rule(self, corridor, corridor_kb):
        e = corridor.domain.state({"at_a", "vis_walk"})
        c = corridor.domain.state({"at_c", "vis_walk"})
        record = record_hazard(corridor_kb, e, c, 0)
        [finding] = analyze(corridor_kb, record)
        rule = finding.hazards[0]
        assert rule.name == "unknown-1"
        assert rule.source.to_strings() == ["at_a", "!at_c"]
        assert rule.consequence.to_strings() == ["!at_a", "at_c"]
        assert finding.recommendation == corridor_kb.policy.default

    def test_synthesized_rule_explains_its_hazard(self, corridor):
        e = corridor.domain.state({"at_b", "vis_walk"})
        c = corridor.domain.state({"at_b", "wet", "vis_walk"})
        rule = synthesize_rule(HazardRecord(e, c, 0), 7)
        assert rule.name == "unknown-7"
        assert rule.source.holds_in(e.true)
        assert rule.consequence.override(e.true) == c.true

    def test_policy_recommendation_for_the_matched_tag(self, corridor, corridor_kb, flooded):
        record = record_hazard(corridor_kb, flooded.with_values(wet=False), flooded, 1)
        [finding] = analyze(corridor_kb, record)
        assert finding.names == ["flood"]
        assert finding.recommendation.as_tuple() == ("Now", "All", "Resilient")

    def test_tag_closure_generalises_to_siblings(self):
        scenario = build(GridSpec(siblings=True))
        kb = KnowledgeBase.from_scenario(scenario)
        e = scenario.domain.state({"at_2_1", "heading_E", "vis_move"})
        c = e.with_values(inSpill=True, fat_4_2=True)
        record = record_hazard(kb, e, c, 3)
        assert record.matched_rules == ("oilSpill_2_1",)
        [finding] = analyze(kb, record)
        assert finding.names == [
            "oilSpill_2_1",
            "oilSpill_3_1",
            "oilSpill_2_2",
            "iceSheet",
            "slipperySand",
        ]


class TestKnowledge:
    def test_learn_reports_new_rules_once(self, corridor, corridor_kb):
        flood = corridor.environment.hazards[0]
        assert corridor_kb.learn([flood]) == ["flood"]
        assert corridor_kb.learn([flood]) == []
        assert corridor_kb.known_hazards() == (flood,)

    def test_delegated_visibility(self, corridor_kb):
        assert corridor_kb.delegated_predicates() == frozenset()
        scenario = build(GridSpec(coarse_hidden_in_spill=True))
        assert KnowledgeBase.from_scenario(scenario).delegated_predicates() == frozenset({"vis_move"})

    def test_internal_goals_only_hold_visibility_predicates(self, corridor_kb):
        corridor_kb.add_internal_goals({"vis_wade", "boots"})
        assert corridor_kb.internal_goals == {"vis_wade"}


class TestExecutor:
    def test_quiet_execution_completes(self, corridor, corridor_kb):
        start = corridor.environment.initial_state
        outcome = execute(_plan(corridor, "walk_a_b", "walk_b_c"), start, QuietStepper(), corridor_kb)
        assert outcome.completed
        assert outcome.executed == 2
        assert outcome.final.satisfies(Condition.of("at_c"))

    def test_failure_without_hazard_is_a_defect(self, corridor, corridor_kb):
        start = corridor.environment.initial_state
        with pytest.raises(StepFailure) as exc:
            execute(_plan(corridor, "walk_b_c"), start, QuietStepper(), corridor_kb)
        assert exc.value.index == 0
        assert exc.value.error_code == "STEP_FAILURE"

    def test_hazard_halts_at_the_failing_step(self, corridor, corridor_kb):
        recorder = TraceRecorder(corridor, 0, 1)
        injector = HazardInjector(corridor.domain, corridor.environment, sink=recorder)
        start = corridor.environment.initial_state
        outcome = execute(
            _plan(corridor, "walk_a_b", "walk_b_c"), start, injector, corridor_kb, sink=recorder
        )
        assert outcome.kind is OutcomeKind.HAZARD_HALT
        assert outcome.executed == 1
        assert outcome.record.step_index == 1
        assert outcome.record.mismatch == ("!wet",)
        assert [e.kind for e in recorder.events] == ["ActionExecuted", "HazardInjected", "HazardDetected"]
        assert recorder.events[-1].matched_rules == ["flood"]

    def test_hazard_after_the_last_step_is_caught_by_the_goal(self, corridor, corridor_kb):
        injector = HazardInjector(corridor.domain, corridor.environment)
        start = corridor.environment.initial_state
        outcome = execute(
            _plan(corridor, "walk_a_b"), start, injector, corridor_kb, goal=Condition.of("at_b", "!wet")
        )
        assert outcome.kind is OutcomeKind.HAZARD_HALT
        assert outcome.record.step_index == 1
        assert outcome.record.mismatch == ("!wet",)

    def test_empowering_steps_emit_visibility_changes(self, corridor, corridor_kb, flooded):
        recorder = TraceRecorder(corridor, 0, 1)
        outcome = execute(
            _plan(corridor, "put_on_boots", "learn_wading"), flooded, QuietStepper(), corridor_kb, sink=recorder
        )
        assert outcome.completed
        changes = [e for e in recorder.events if e.kind == "VisibilityChanged"]
        assert [(e.predicate, e.value, e.cause) for e in changes] == [("vis_wade", True, "EmpoweringAction")]


class TestVisibilityDiscipline:
    def test_manager_may_not_raise_visibility(self, corridor):
        state = corridor.environment.initial_state
        with pytest.raises(DisciplineViolation) as exc:
            toggle_visibility(corridor.domain, state, ["vis_wade"], True)
        assert exc.value.error_code == "VISIBILITY_DISCIPLINE"

    def test_manager_may_only_touch_visibility_predicates(self, corridor):
        state = corridor.environment.initial_state
        with pytest.raises(DisciplineViolation):
            toggle_visibility(corridor.domain, state, ["boots"], False)

    def test_lowering(self, corridor):
        state = corridor.environment.initial_state
        lowered = toggle_visibility(corridor.domain, state, ["vis_walk", "vis_wade"], False)
        assert lowered.true == frozenset({"at_a"})

    def test_manager_toggle_emits_events(self, corridor, corridor_kb):
        recorder = TraceRecorder(corridor, 0, 1)
        manager = AutonomicManager(
            corridor_kb, QuietStepper(), corridor.environment.initial_state, sink=recorder
        )
        manager.toggle_visibility(["vis_walk"], False)
        [event] = recorder.events
        assert (event.predicate, event.value, event.cause) == ("vis_walk", False, "ManagerToggle")
        assert "vis_walk" not in manager.state.true


class TestStrongestMode:
    def test_robust_wins(self):
        resilient = Recommendation(When.LATER, Duration.ALL, PlanMode.RESILIENT)
        robust = Recommendation(When.NOW, Duration.CURRENT, PlanMode.ROBUST)
        assert strongest_mode([resilient, robust]) is robust
        assert strongest_mode([resilient]) is resilient
        assert strongest_mode([]) is None


class TestManager:
    def _manager(self, scenario, recorder=None):
        kb = KnowledgeBase.from_scenario(scenario)
        injector = HazardInjector(scenario.domain, scenario.environment, sink=recorder)
        return AutonomicManager(kb, injector, scenario.environment.initial_state, sink=recorder), kb

    def test_empowers_now_and_completes(self, corridor):
        recorder = TraceRecorder(corridor, 0, 1)
        manager, kb = self._manager(corridor, recorder)
        status = manager.run_mission("reach_c", Condition.of("at_c"))
        assert status is MissionStatus.COMPLETED
        assert manager.state.satisfies(Condition.of("at_c", "vis_wade"))
        plans = [(e.purpose, e.plan) for e in recorder.events if e.kind == "PlanSynthesized"]
        assert plans == [
            ("mission", ["walk_a_b", "walk_b_c"]),
            ("empowerment", ["put_on_boots", "learn_wading"]),
            ("hidden", ["wade_b_c"]),
        ]
        assert [rule.name for rule in kb.known_hazards()] == ["flood"]
        assert kb.internal_goals == {"vis_wade"}

    def test_resilient_recovery_skips_the_analyzer(self, corridor):
        recorder = TraceRecorder(corridor, 0, 1)
        manager, kb = self._manager(corridor, recorder)
        manager.state = manager.state.with_values(boots=True, vis_wade=True)
        assert manager.run_mission("reach_c", Condition.of("at_c")) is MissionStatus.COMPLETED
        kinds = [e.kind for e in recorder.events]
        assert "RecommendationChosen" not in kinds
        recovery = [e for e in recorder.events if e.kind == "PlanSynthesized" and e.purpose == "recovery"]
        assert [e.plan for e in recovery] == [["wade_b_c"]]
        assert [rule.name for rule in kb.known_hazards()] == ["flood"]

    def test_later_resets_and_defers(self, corridor_document):
        corridor_document["policy"] = {"water": {"when": "Later", "duration": "All", "mode": "Resilient"}}
        scenario = load_scenario(corridor_document)
        recorder = TraceRecorder(scenario, 0, 1)
        manager, kb = self._manager(scenario, recorder)
        assert manager.run_mission("reach_c", Condition.of("at_c")) is MissionStatus.ABORTED
        assert [task.predicates for task in kb.deferred] == [frozenset({"vis_wade"})]
        assert manager.state.satisfies(Condition.of("at_a", "!wet"))
        tail = [e.kind for e in recorder.events][-3:]
        assert tail == ["TaskQueued", "ResetIssued", "MissionAborted"]

        assert manager.drain_deferred() == ["vis_wade"]
        assert not kb.deferred
        assert "vis_wade" in manager.state.true

    def test_unreachable_goal_is_pathological(self, corridor):
        recorder = TraceRecorder(corridor, 0, 1)
        manager, _ = self._manager(corridor, recorder)
        assert manager.run_mission("boots", Condition.of("boots")) is MissionStatus.PATHOLOGICAL
        kinds = [e.kind for e in recorder.events]
        assert kinds[0] == "PathologicalOutcome"
        assert kinds[-1] == "MissionAborted"
        assert recorder.events[-1].reason == "pathological"


RUSTY_TRACK = {
    "name": "rusty_track",
    "predicates": ["p0", "p1", "p2", "p3", "rusty", "vis_go"],
    "actions": [
        {"name": "go_0_1", "kind": "Operational", "visible_if": "vis_go", "pre": ["p0"], "eff": ["!p0", "p1"]},
        {"name": "go_1_2", "kind": "Operational", "visible_if": "vis_go", "pre": ["p1"], "eff": ["!p1", "p2"]},
        {"name": "go_2_3", "kind": "Operational", "visible_if": "vis_go", "pre": ["p2", "!rusty"], "eff": ["!p2", "p3"]},
        {"name": "polish", "kind": "Operational", "visible_if": "vis_go", "pre": ["rusty"], "eff": ["!rusty"]},
    ],
    "waypoints": [["p0", "!rusty"]],
    "reset": {"preserve": ["vis_go"]},
    "initial_state": ["p0", "vis_go"],
    "missions": [{"goal": ["p3"], "name": "reach_3"}],
    "hazards": [
        {"name": "rust", "source": ["p1", "!rusty"], "effect": ["rusty"], "tags": ["corrosion"],
         "schedule": {"trigger": "Always"}}
    ],
    "policy": {"*": {"when": "Now", "duration": "Current", "mode": "Resilient"}},
    "seed": 0,
}


class TestDelayedDetection:
    """A hazard fired one step is only noticed a few steps later."""

    @pytest.fixture
    def track(self):
        return load_scenario(RUSTY_TRACK)

    def test_record_pairs_the_injection_states(self, track):
        kb = KnowledgeBase.from_scenario(track)
        recorder = TraceRecorder(track, 0, 1)
        injector = HazardInjector(track.domain, track.environment, sink=recorder)
        start = track.environment.initial_state
        outcome = execute(_plan(track, "go_0_1", "go_1_2", "go_2_3"), start, injector, kb, sink=recorder)

        assert outcome.kind is OutcomeKind.HAZARD_HALT
        assert outcome.executed == 2
        assert outcome.final == track.domain.state({"p2", "rusty", "vis_go"})
        record = outcome.record
        assert record.step_index == 2
        assert record.mismatch == ("!rusty",)
        assert record.matched_rules == ("rust",)
        assert record.known
        assert record.pre == track.domain.state({"p1", "vis_go"})
        assert record.observed == track.domain.state({"p1", "rusty", "vis_go"})
        detected = recorder.events[-1]
        assert detected.kind == "HazardDetected"
        assert detected.step_index == 2
        assert detected.matched_rules == ["rust"]
        assert detected.pre == record.pre.digest()

    def test_failure_the_plan_would_hit_anyway_is_a_defect(self, track):
        kb = KnowledgeBase.from_scenario(track)
        injector = HazardInjector(track.domain, track.environment)
        start = track.environment.initial_state
        with pytest.raises(StepFailure) as exc:
            execute(_plan(track, "go_0_1", "go_2_3"), start, injector, kb)
        assert exc.value.index == 1
        assert kb.history == []

    def test_manager_recovers_from_where_the_agent_stands(self, track):
        kb = KnowledgeBase.from_scenario(track)
        injector = HazardInjector(track.domain, track.environment)
        manager = AutonomicManager(kb, injector, track.environment.initial_state)
        assert manager.run_mission("reach_3", Condition.of("p3")) is MissionStatus.COMPLETED
        assert manager.state.satisfies(Condition.of("p3", "!rusty"))
        assert [r.step_index for r in kb.history] == [2]
