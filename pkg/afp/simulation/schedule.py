"""
Environment-side hazard injection.

After every action the injector tests each hazard rule, in declaration
order, against the state the action produced. Every matching rule advances
its match counter and evaluates its schedule; one hazard is injected per
step, the first triggered rule in declaration order. All draws come from
one ``random.Random`` seeded per run, so equal seeds give equal injections.
"""

import random
from collections import Counter
from typing import Optional, Tuple

import structlog

from afp.models.domain import Domain, Environment
from afp.models.enums import Trigger, VisibilityCause
from afp.models.hazard import HazardRule
from afp.models.state import State
from afp.runtime.sink import NullSink, TraceSink, emit_visibility_changes
from afp.schemas.trace import HazardInjected

logger = structlog.get_logger(__name__)


class HazardInjector:
    """A ``Stepper`` playing the environment's hazard schedules."""

    def __init__(
        self,
        domain: Domain,
        environment: Environment,
        *,
        seed: int = 0,
        sink: Optional[TraceSink] = None,
    ):
        self.domain = domain
        self.environment = environment
        self.rng = random.Random(seed)
        self.matches: Counter = Counter()
        self.fired: Counter = Counter()
        self.preempted: Counter = Counter()
        self.sink = sink or NullSink()

    def _fires(self, rule: HazardRule) -> bool:
        schedule = self.environment.schedule_for(rule.name)
        if schedule.trigger is Trigger.ALWAYS:
            return True
        if schedule.trigger is Trigger.NTH_MATCH:
            return self.matches[rule.name] == schedule.n
        return self.rng.random() < schedule.p

    def after_action(self, expected: State) -> Tuple[State, Optional[HazardRule]]:
        """
        Fire at most one hazard on ``expected``.

        Every matching rule advances its counter and has its trigger evaluated,
        so Probability draws and NthMatch counts do not depend on other rules.
        The first triggered rule, in declaration order, whose consequence
        changes the state is injected; the other triggered rules are counted
        in ``preempted``.
        """
        triggered = []
        for rule in self.environment.hazards:
            if not rule.source.holds_in(expected.true):
                continue
            self.matches[rule.name] += 1
            if self._fires(rule):
                triggered.append(rule)

        fired: Optional[HazardRule] = None
        observed = expected
        for rule in triggered:
            if fired is None:
                candidate = expected.overridden(rule.consequence)
                if candidate != expected:
                    fired, observed = rule, candidate
                    continue
            self.preempted[rule.name] += 1
        if fired is None:
            return expected, None

        self.fired[fired.name] += 1
        self.sink.emit(HazardInjected, rule=fired.name, pre=expected.digest(), post=observed.digest())
        emit_visibility_changes(self.sink, self.domain, expected, observed, VisibilityCause.HAZARD)
        logger.info("environment.hazard", rule=fired.name, match=self.matches[fired.name])
        if len(triggered) > 1:
            logger.debug("environment.preempted", rules=[r.name for r in triggered if r is not fired])
        return observed, fired
