"""Hazard rules and their environment schedules."""

from dataclasses import dataclass
from typing import FrozenSet, Optional

from afp.models.enums import Trigger
from afp.models.literals import Condition, Effect


@dataclass(frozen=True)
class HazardRule:
    """
    Pattern to consequence rewrite.

    Denotes every hazard transition (s, t) where s satisfies ``source`` and t is
    s overridden by ``consequence``. ``tags`` name hazard classes the analyzer
    uses to generalize from one hazard to its siblings.
    """

    name: str
    source: Condition
    consequence: Effect
    tags: FrozenSet[str] = frozenset()

    @property
    def predicates(self) -> FrozenSet[str]:
        return self.source.predicates | self.consequence.predicates

    def __lt__(self, other: "HazardRule") -> bool:
        return self.name < other.name


@dataclass(frozen=True)
class HazardSchedule:
    """When the environment fires a rule whose source matches."""

    trigger: Trigger = Trigger.ALWAYS
    n: Optional[int] = None
    p: Optional[float] = None

    def __post_init__(self) -> None:
        if self.trigger is Trigger.NTH_MATCH and (self.n is None or self.n < 1):
            raise ValueError("NthMatch schedules need n >= 1")
        if self.trigger is Trigger.PROBABILITY and (self.p is None or not 0.0 <= self.p <= 1.0):
            raise ValueError("Probability schedules need p in [0, 1]")

    @classmethod
    def always(cls) -> "HazardSchedule":
        return cls(Trigger.ALWAYS)

    @classmethod
    def nth_match(cls, n: int) -> "HazardSchedule":
        return cls(Trigger.NTH_MATCH, n=n)

    @classmethod
    def probability(cls, p: float) -> "HazardSchedule":
        return cls(Trigger.PROBABILITY, p=p)
