"""
Knowledge shared by the MAPE-K components.

The knowledge base holds the hazard catalog (every rule the scenario
declares), the hazards the system has learned about, the hazard history,
internal goals, deferred empowerment tasks and staged visibility toggles.
Only the manager mutates it.
"""

from collections import deque
from dataclasses import dataclass, field
from typing import Deque, Dict, FrozenSet, Iterable, List, Set, Tuple

from afp.models.domain import Domain
from afp.models.enums import Duration
from afp.models.hazard import HazardRule
from afp.models.recommendation import AnalyzerPolicy
from afp.models.scenario import Scenario
from afp.models.semantics import ActionPartition, partition_actions
from afp.models.state import State


@dataclass(frozen=True)
class HazardRecord:
    """An observed hazard: expected state e, observed state c, and the rules explaining it."""

    pre: State
    observed: State
    step_index: int
    matched_rules: Tuple[str, ...] = ()
    mismatch: Tuple[str, ...] = ()

    @property
    def known(self) -> bool:
        return bool(self.matched_rules)


@dataclass(frozen=True)
class DeferredTask:
    """Empowerment postponed to the next mission boundary."""

    predicates: FrozenSet[str]
    duration: Duration


@dataclass
class KnowledgeBase:
    domain: Domain
    catalog: Tuple[HazardRule, ...] = ()
    policy: AnalyzerPolicy = field(default_factory=AnalyzerPolicy)
    history: List[HazardRecord] = field(default_factory=list)
    internal_goals: Set[str] = field(default_factory=set)
    pending_toggles: Set[str] = field(default_factory=set)
    deferred: Deque[DeferredTask] = field(default_factory=deque)
    _known: Dict[str, HazardRule] = field(default_factory=dict)

    @classmethod
    def from_scenario(cls, scenario: Scenario) -> "KnowledgeBase":
        return cls(
            domain=scenario.domain,
            catalog=scenario.environment.hazards,
            policy=scenario.policy,
        )

    def partition(self, state: State) -> ActionPartition:
        return partition_actions(state, self.domain)

    def rule(self, name: str) -> HazardRule:
        for rule in self.catalog:
            if rule.name == name:
                return rule
        return self._known[name]

    def known_hazards(self) -> Tuple[HazardRule, ...]:
        return tuple(self._known.values())

    def learn(self, rules: Iterable[HazardRule]) -> List[str]:
        """Add rules to the known hazards; returns the names that were new."""
        added = []
        for rule in rules:
            if rule.name not in self._known:
                self._known[rule.name] = rule
                added.append(rule.name)
        return added

    def delegated_predicates(self) -> FrozenSet[str]:
        """Visibility predicates the environment itself raises through a cataloged hazard."""
        raised: Set[str] = set()
        for rule in self.catalog:
            raised |= rule.consequence.positives
        return frozenset(raised & self.domain.visibility_predicates)

    def add_internal_goals(self, predicates: Iterable[str]) -> None:
        self.internal_goals |= set(predicates) & self.domain.visibility_predicates
