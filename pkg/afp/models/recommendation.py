"""Analyzer recommendations and the policy table they are drawn from."""

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from afp.models.enums import Duration, PlanMode, When


@dataclass(frozen=True)
class Recommendation:
    """The analyzer's advice: when to improve, for how long, and in which mode."""

    when: When = When.NOW
    duration: Duration = Duration.ALL
    mode: PlanMode = PlanMode.RESILIENT

    def __post_init__(self) -> None:
        if self.mode is PlanMode.PLAIN:
            raise ValueError("Recommendation mode must be Robust or Resilient")

    def as_tuple(self) -> tuple:
        return (self.when.value, self.duration.value, self.mode.value)


DEFAULT_RECOMMENDATION = Recommendation(When.NOW, Duration.ALL, PlanMode.RESILIENT)


@dataclass(frozen=True)
class AnalyzerPolicy:
    """Recommendation table keyed by hazard class tag, with a default."""

    by_tag: Mapping[str, Recommendation] = field(default_factory=dict, hash=False)
    default: Recommendation = DEFAULT_RECOMMENDATION

    def recommend(self, tags: Iterable[str]) -> Recommendation:
        """First table entry in sorted tag order, else the default."""
        for tag in sorted(tags):
            if tag in self.by_tag:
                return self.by_tag[tag]
        return self.default
