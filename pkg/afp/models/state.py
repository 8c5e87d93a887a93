"""
States: total boolean valuations over a domain's predicate set.

A state stores the set of predicates that are true; every other predicate of
its universe is false (closed world). Equality and hashing only look at the
true set, so states are cheap to keep in search frontiers and visited sets.
"""

import hashlib
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List

from afp.core.exceptions import DomainIntegrityError
from afp.models.literals import Condition, Effect


@dataclass(frozen=True)
class State:
    """Total valuation over ``universe``, stored as the set of true predicates."""

    true: FrozenSet[str]
    universe: FrozenSet[str] = field(compare=False, repr=False)

    @classmethod
    def closed_world(cls, universe: Iterable[str], true: Iterable[str] = ()) -> "State":
        """
        Build a state where only ``true`` holds.

        Raises:
            DomainIntegrityError: If a true predicate is not in the universe
        """
        universe_set = frozenset(universe)
        true_set = frozenset(true)
        unknown = true_set - universe_set
        if unknown:
            raise DomainIntegrityError(f"Unknown predicates in state: {sorted(unknown)}")
        return cls(true=true_set, universe=universe_set)

    def value(self, predicate: str) -> bool:
        if predicate not in self.universe:
            raise DomainIntegrityError(f"Unknown predicate '{predicate}'")
        return predicate in self.true

    def satisfies(self, condition: Condition) -> bool:
        return condition.holds_in(self.true)

    def overridden(self, effect: Effect) -> "State":
        return State(true=effect.override(self.true), universe=self.universe)

    def with_values(self, **values: bool) -> "State":
        true = set(self.true)
        for name, value in values.items():
            if value:
                true.add(name)
            else:
                true.discard(name)
        return State.closed_world(self.universe, true)

    def literals(self) -> List[str]:
        """Full literal listing over the universe, sorted by predicate name."""
        return [p if p in self.true else f"!{p}" for p in sorted(self.universe)]

    def true_list(self) -> List[str]:
        return sorted(self.true)

    def digest(self) -> str:
        """Stable 64-bit hash of the valuation, as 16 hex characters."""
        payload = "\n".join(sorted(self.true)).encode("utf-8")
        return hashlib.blake2b(payload, digest_size=8).hexdigest()

    def __str__(self) -> str:
        return "<" + ", ".join(sorted(self.true)) + ">"
