"""Tests for scenario and trace persistence."""

import json

import pytest

from afp.core.exceptions import ScenarioParseError, ScenarioValidationError
from afp.models.enums import Trigger
from afp.models.literals import Condition
from afp.models.validation import RULE_DECLARED_PREDICATES, RULE_VISIBILITY_WRITE, RULE_WAYPOINTS_ARE_GOALS
from afp.repositories import (
    check_scenario,
    dump_scenario,
    dumps_trace,
    load_scenario,
    load_trace,
    loads_trace,
    save_scenario,
    save_trace,
)
from afp.simulation import run_game

pytestmark = pytest.mark.unit


class TestScenarioRepository:
    def test_load_from_path_text_and_mapping(self, fixtures_dir, corridor_document):
        path = fixtures_dir / "corridor.json"
        from_path = load_scenario(path)
        from_str_path = load_scenario(str(path))
        from_text = load_scenario(path.read_text())
        from_mapping = load_scenario(corridor_document)
        for scenario in (from_str_path, from_text, from_mapping):
            assert scenario.domain == from_path.domain
        assert from_path.name == "corridor"
        assert from_path.seed == 7

    def test_grounding(self, corridor):
        env = corridor.environment
        assert env.initial_state.true == frozenset({"at_a", "vis_walk"})
        assert env.schedule_for("flood").trigger is Trigger.ALWAYS
        assert env.hazard_map["flood"].tags == frozenset({"water"})
        assert corridor.policy.recommend({"water"}).as_tuple() == ("Now", "All", "Resilient")
        assert corridor.grid is None

    def test_malformed_json_reports_position(self):
        with pytest.raises(ScenarioParseError) as exc:
            load_scenario('{"name": "broken",\n  "predicates": [}')
        assert exc.value.line == 2
        assert exc.value.column is not None
        assert exc.value.error_code == "SCENARIO_PARSE"

    def test_unknown_key_is_a_parse_error(self, corridor_document):
        corridor_document["actions"][0]["visible"] = "vis_walk"
        with pytest.raises(ScenarioParseError, match="actions.0.visible"):
            load_scenario(corridor_document)

    def test_plain_policy_mode_rejected(self, corridor_document):
        corridor_document["policy"]["water"]["mode"] = "Plain"
        with pytest.raises(ScenarioParseError):
            load_scenario(corridor_document)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ScenarioParseError, match="No such document"):
            load_scenario(str(tmp_path / "absent.json"))

    def test_violations_are_listed_together(self, corridor_document):
        corridor_document["actions"][0]["eff"].append("vis_wade")
        corridor_document["missions"][0]["goal"].append("nowhere")
        with pytest.raises(ScenarioValidationError) as exc:
            load_scenario(corridor_document)
        rules = sorted(v.rule for v in exc.value.violations)
        assert rules == sorted([RULE_VISIBILITY_WRITE, RULE_DECLARED_PREDICATES])
        assert len(exc.value.context["violations"]) == 2

    def test_check_scenario_returns_violations(self, corridor_document):
        corridor_document["actions"][0]["eff"].append("vis_wade")
        scenario, violations = check_scenario(corridor_document)
        assert scenario.name == "corridor"
        assert [v.rule for v in violations] == [RULE_VISIBILITY_WRITE]

    def test_explicit_goals_must_cover_the_waypoints(self, corridor_document):
        corridor_document["goals"] = [["at_c"]]
        scenario, violations = check_scenario(corridor_document)
        assert scenario.environment.goals(scenario.domain) == (Condition.of("at_c"),)
        assert [(v.rule, v.entity) for v in violations] == [(RULE_WAYPOINTS_ARE_GOALS, "waypoint 0")]

    def test_explicit_goals_are_validated_and_kept(self, corridor_document, tmp_path):
        corridor_document["goals"] = [["at_c"], ["at_a", "!wet"], ["at_c", "dry"]]
        _, violations = check_scenario(corridor_document)
        assert [(v.rule, v.entity) for v in violations] == [(RULE_DECLARED_PREDICATES, "goal 2")]

        corridor_document["goals"].pop()
        scenario = load_scenario(corridor_document)
        reloaded = load_scenario(save_scenario(scenario, tmp_path / "goals.json"))
        assert reloaded.environment.goal_patterns == (Condition.of("at_c"), Condition.of("at_a", "!wet"))

    def test_dump_and_reload(self, corridor, tmp_path):
        path = save_scenario(corridor, tmp_path / "out" / "corridor.json")
        reloaded = load_scenario(path)
        assert reloaded.domain == corridor.domain
        assert reloaded.environment.hazards == corridor.environment.hazards
        assert reloaded.policy == corridor.policy
        assert dump_scenario(reloaded) == path.read_text()

    def test_grid_metadata_survives(self, mini):
        reloaded = load_scenario(json.loads(dump_scenario(mini)))
        assert reloaded.grid == mini.grid
        assert reloaded.domain == mini.domain
        assert reloaded.environment.initial_state == mini.environment.initial_state


class TestTraceRepository:
    @pytest.fixture
    def trace(self, mini):
        return run_game(mini, max_missions=1)

    def test_save_and_load(self, trace, tmp_path):
        path = save_trace(trace, tmp_path / "run.ndjson")
        loaded = load_trace(path)
        assert loaded == trace
        assert path.read_text().splitlines()[0].startswith('{"kind":"TraceHeader"')

    def test_equal_traces_give_identical_text(self, trace, mini):
        assert dumps_trace(trace) == dumps_trace(run_game(mini, max_missions=1))

    def test_empty_trace(self):
        with pytest.raises(ScenarioParseError, match="Empty trace"):
            loads_trace("\n\n")

    def test_missing_header(self, trace):
        body = dumps_trace(trace).splitlines()[1:]
        with pytest.raises(ScenarioParseError, match="header"):
            loads_trace("\n".join(body))

    def test_bad_event_names_its_line(self, trace):
        lines = dumps_trace(trace).splitlines()
        lines.insert(2, '{"kind": "Nonsense", "step": 1}')
        with pytest.raises(ScenarioParseError) as exc:
            loads_trace("\n".join(lines))
        assert exc.value.line == 3

    def test_truncated_line(self, trace):
        lines = dumps_trace(trace).splitlines()
        lines[1] = lines[1][:-5]
        with pytest.raises(ScenarioParseError) as exc:
            loads_trace("\n".join(lines))
        assert exc.value.line == 2

    def test_missing_trace_file(self, tmp_path):
        with pytest.raises(ScenarioParseError, match="No such trace"):
            load_trace(tmp_path / "absent.ndjson")
