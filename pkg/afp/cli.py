"""
Command-line interface.

Usage:
    afp validate <scenario>
    afp plan <scenario> [--from STATE] --goal COND [--mode robust|resilient|plain] [--actions visible|all]
    afp classify <scenario> [--actions visible|all] [--oracle]
    afp run <scenario> [--seed N] [--max-missions N] [--trace out.ndjson] [--render | --render-step N]
    afp casestudy [--when now|later] [--duration current|all] [--seed N] [--trace out.ndjson] [--render | --render-step N]
    afp metrics <trace> [--scenario <scenario>] [--bound L]

A scenario is a JSON file or one of the built-in names ``gridbot`` and
``gridbot-mini``. States and goals are comma-separated literals, e.g.
``--goal at_5_2,!inSpill``. Results are printed to stdout as JSON
documents; logs go to stderr.

Exit codes: 0 success, 1 validation failure, 2 pathological outcome,
3 usage or parse error.
"""

import argparse
import sys
from typing import Any, Callable, Dict, List, NoReturn, Optional

import structlog

from afp.classifier import (
    ALLOWED_ALL,
    ALLOWED_VISIBLE,
    SCOPE_REACHABLE,
    allowed_actions,
    check_antifragile,
    classify_snapshot,
    oracle_classify,
    snapshot_missions,
)
from afp.core.config import settings
from afp.core.exceptions import AfpError, ScenarioValidationError
from afp.core.logging import configure_logging
from afp.models.enums import PlanMode
from afp.models.literals import Condition
from afp.models.recommendation import Recommendation
from afp.models.scenario import Scenario
from afp.models.state import State
from afp.models.validation import validate_domain
from afp.planner import PlanRequest, find_plan, plan_with_recommendation
from afp.repositories import check_scenario, load_scenario, load_trace, save_trace
from afp.scenarios import GridSpec, build, build_mini
from afp.schemas.base import ErrorDocument, ResultDocument
from afp.schemas.trace import TraceDocument
from afp.simulation import mission_outcomes, render_grid, report_metrics, run_game

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PATHOLOGICAL = 2
EXIT_USAGE = 3

BUILTIN_SCENARIOS: Dict[str, Callable[[], Scenario]] = {
    "gridbot": build,
    "gridbot-mini": build_mini,
}


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with code 3."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _print(document) -> None:
    sys.stdout.write(document.to_json() + "\n")


def _result(command: str, data: Any) -> None:
    _print(ResultDocument[Any](command=command, data=data))


def _literals(text: str) -> List[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def resolve_scenario(name: str) -> Scenario:
    """A built-in scenario by name, otherwise a scenario file."""
    if name in BUILTIN_SCENARIOS:
        return BUILTIN_SCENARIOS[name]()
    return load_scenario(name)


def _start_state(scenario: Scenario, text: Optional[str]) -> State:
    if text is None:
        return scenario.environment.initial_state
    return scenario.domain.state(_literals(text))


def cmd_validate(args: argparse.Namespace) -> int:
    if args.scenario in BUILTIN_SCENARIOS:
        scenario = BUILTIN_SCENARIOS[args.scenario]()
        violations = validate_domain(scenario.domain, scenario.environment)
        name = args.scenario
    else:
        scenario, violations = check_scenario(args.scenario)
        name = scenario.name
    _result(
        "validate",
        {"scenario": name, "valid": not violations, "violations": [str(v) for v in violations]},
    )
    return EXIT_INVALID if violations else EXIT_OK


def cmd_plan(args: argparse.Namespace) -> int:
    scenario = resolve_scenario(args.scenario)
    start = _start_state(scenario, args.start)
    goal = Condition.of(*_literals(args.goal))
    scenario.domain.check_literals("goal", goal.predicates)
    actions = frozenset(allowed_actions(scenario, start, args.actions))
    mode = PlanMode(args.mode.capitalize())

    if mode is PlanMode.PLAIN:
        plan, rung = find_plan(start, goal, actions), PlanMode.PLAIN
    else:
        request = PlanRequest(
            start, goal, actions, scenario.environment.hazards, Recommendation(mode=mode)
        )
        plan, rung = plan_with_recommendation(request)
    _result(
        "plan",
        {
            "found": plan is not None,
            "requested": mode.value,
            "mode": rung.value if plan is not None else None,
            "length": len(plan) if plan is not None else None,
            "plan": plan.steps if plan is not None else None,
        },
    )
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    scenario = resolve_scenario(args.scenario)
    state = scenario.environment.initial_state
    hazards = scenario.environment.hazards
    verdict = classify_snapshot(scenario, state, hazards, which=args.actions)
    data: Dict[str, Any] = {"actions": args.actions, "verdict": verdict.model_dump(mode="json")}
    if args.oracle:
        oracle = oracle_classify(
            scenario.domain,
            scenario.environment,
            allowed_actions(scenario, state, args.actions),
            hazards,
            missions=snapshot_missions(scenario, state),
            scope=SCOPE_REACHABLE,
        )
        data["oracle"] = oracle.model_dump(mode="json")
        data["oracle_agrees"] = (oracle.fragile, oracle.robust, oracle.resilient) == (
            verdict.fragile,
            verdict.robust,
            verdict.resilient,
        )
    _result("classify", data)
    return EXIT_OK


def _play(
    command: str,
    scenario: Scenario,
    args: argparse.Namespace,
    extra: Optional[Callable[[TraceDocument], Dict[str, Any]]] = None,
) -> int:
    trace = run_game(scenario, args.max_missions, args.seed)
    if args.trace:
        save_trace(trace, args.trace)
    data: Dict[str, Any] = {
        "scenario": trace.scenario,
        "seed": trace.seed,
        "events": len(trace.events),
        "missions": [o.model_dump(mode="json") for o in mission_outcomes(trace)],
        "pathological": len(trace.of_kind("PathologicalOutcome")),
        "trace": str(args.trace) if args.trace else None,
    }
    if args.render_step is not None:
        last = trace.last_step()
        if last is None or not 0 <= args.render_step <= last:
            raise AfpError(f"--render-step must lie in 0..{last}", error_code="USAGE")
        data["render_step"] = args.render_step
        data["render"] = render_grid(trace, args.render_step, scenario)
    elif args.render:
        data["render"] = render_grid(trace, None, scenario)
    if extra:
        data.update(extra(trace))
    _result(command, data)
    return EXIT_PATHOLOGICAL if data["pathological"] else EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    return _play("run", resolve_scenario(args.scenario), args)


def cmd_casestudy(args: argparse.Namespace) -> int:
    policy = None
    if args.when or args.duration:
        policy = {"slippery": ((args.when or "now").capitalize(), (args.duration or "all").capitalize(), "Resilient")}
    scenario = build(GridSpec(policy=policy))
    if args.max_missions is None:
        args.max_missions = len(scenario.environment.missions)
    slippery = scenario.environment.rules_tagged({"slippery"})

    def verdict(trace: TraceDocument) -> Dict[str, Any]:
        return {"antifragility": check_antifragile(trace, scenario, slippery).model_dump(mode="json")}

    return _play("casestudy", scenario, args, verdict)


def cmd_metrics(args: argparse.Namespace) -> int:
    trace = load_trace(args.trace)
    name = args.scenario or trace.scenario
    if args.scenario is None and name not in BUILTIN_SCENARIOS:
        raise AfpError(
            f"Trace was recorded on '{name}'; pass --scenario with its file",
            error_code="USAGE",
        )
    document = report_metrics(trace, resolve_scenario(name), bound=args.bound)
    _result("metrics", document.model_dump(mode="json"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="afp", description="Antifragile planning runtime")
    parser.add_argument("--log-level", default=None, help="Override AFP_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="Validate a scenario file")
    p.add_argument("scenario")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("plan", help="Plan from a state to a goal")
    p.add_argument("scenario")
    p.add_argument("--from", dest="start", default=None, help="True predicates, comma separated")
    p.add_argument("--goal", required=True, help="Goal literals, comma separated")
    p.add_argument("--mode", choices=["robust", "resilient", "plain"], default="robust")
    p.add_argument("--actions", choices=[ALLOWED_VISIBLE, ALLOWED_ALL], default=ALLOWED_VISIBLE)
    p.set_defaults(handler=cmd_plan)

    p = sub.add_parser("classify", help="Classify the system at its initial state")
    p.add_argument("scenario")
    p.add_argument("--actions", choices=[ALLOWED_VISIBLE, ALLOWED_ALL], default=ALLOWED_VISIBLE)
    p.add_argument("--oracle", action="store_true", help="Cross-check with the state-graph oracle")
    p.set_defaults(handler=cmd_classify)

    for name, handler, help_text in (
        ("run", cmd_run, "Play a scenario and record its trace"),
        ("casestudy", cmd_casestudy, "Play the built-in grid robot case study"),
    ):
        p = sub.add_parser(name, help=help_text)
        if name == "run":
            p.add_argument("scenario")
        else:
            p.add_argument("--when", choices=["now", "later"], default=None)
            p.add_argument("--duration", choices=["current", "all"], default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--max-missions", dest="max_missions", type=int, default=None)
        p.add_argument("--trace", default=None, help="Write the NDJSON trace here")
        p.add_argument("--render", action="store_true", help="Include the final grid diagram")
        p.add_argument(
            "--render-step",
            dest="render_step",
            type=int,
            default=None,
            help="Include the grid diagram after trace step N",
        )
        p.set_defaults(handler=handler)

    p = sub.add_parser("metrics", help="Compute run metrics from a trace")
    p.add_argument("trace")
    p.add_argument("--scenario", default=None, help="Scenario the trace was recorded on")
    p.add_argument("--bound", type=int, default=None, help="Strength plan-length bound")
    p.set_defaults(handler=cmd_metrics)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(level=args.log_level)
    logger.debug("cli.command", command=args.command, version=settings.APP_VERSION)

    try:
        return args.handler(args)
    except ScenarioValidationError as exc:
        _print(ErrorDocument(error=exc.detail, error_code=exc.error_code, details=exc.context))
        return EXIT_INVALID
    except AfpError as exc:
        _print(ErrorDocument(error=exc.detail, error_code=exc.error_code, details=exc.context or None))
        return EXIT_USAGE
    except KeyboardInterrupt:
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
