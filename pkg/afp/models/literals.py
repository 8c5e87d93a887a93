"""
Signed literals and the two literal sets built from them.

A ``Condition`` is a conjunction tested against a state; an ``Effect`` is an
override written into a state. Both are written in scenario files as arrays
of strings, ``"p"`` for a positive literal and ``"!p"`` for a negative one.
"""

from dataclasses import dataclass, field
from typing import AbstractSet, FrozenSet, Iterable, Tuple, Union

from afp.core.exceptions import DomainIntegrityError

NEGATION = "!"


@dataclass(frozen=True, order=True)
class Literal:
    """A predicate with a polarity."""

    predicate: str
    polarity: bool = True

    def __str__(self) -> str:
        return self.predicate if self.polarity else f"{NEGATION}{self.predicate}"

    def negated(self) -> "Literal":
        return Literal(self.predicate, not self.polarity)

    def holds_in(self, true_predicates: AbstractSet[str]) -> bool:
        return (self.predicate in true_predicates) == self.polarity


def parse_literal(text: str) -> Literal:
    """
    Parse a signed literal string.

    Args:
        text: ``"p"`` or ``"!p"``

    Returns:
        The parsed literal

    Raises:
        DomainIntegrityError: If the predicate name is empty
    """
    raw = text.strip()
    polarity = not raw.startswith(NEGATION)
    name = raw[len(NEGATION):].strip() if not polarity else raw
    if not name:
        raise DomainIntegrityError(f"Malformed literal '{text}'")
    return Literal(name, polarity)


LiteralLike = Union[Literal, str]


def _coerce(items: Iterable[LiteralLike]) -> FrozenSet[Literal]:
    return frozenset(item if isinstance(item, Literal) else parse_literal(item) for item in items)


@dataclass(frozen=True)
class LiteralSet:
    """Immutable set of literals with cached positive/negative predicate views."""

    literals: FrozenSet[Literal] = frozenset()
    positives: FrozenSet[str] = field(init=False, compare=False, repr=False)
    negatives: FrozenSet[str] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        literals = _coerce(self.literals)
        object.__setattr__(self, "literals", literals)
        object.__setattr__(self, "positives", frozenset(lit.predicate for lit in literals if lit.polarity))
        object.__setattr__(self, "negatives", frozenset(lit.predicate for lit in literals if not lit.polarity))

    @classmethod
    def of(cls, *items: LiteralLike):
        return cls(frozenset(_coerce(items)))

    @property
    def predicates(self) -> FrozenSet[str]:
        return self.positives | self.negatives

    def is_consistent(self) -> bool:
        """No predicate appears with both polarities."""
        return not (self.positives & self.negatives)

    def sorted_literals(self) -> Tuple[Literal, ...]:
        return tuple(sorted(self.literals))

    def to_strings(self) -> list:
        return [str(lit) for lit in self.sorted_literals()]

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self):
        return iter(self.sorted_literals())

    def __str__(self) -> str:
        return "{" + ", ".join(self.to_strings()) + "}"


class Condition(LiteralSet):
    """Conjunction of literals, e.g. an action precondition or a goal."""

    def holds_in(self, true_predicates: AbstractSet[str]) -> bool:
        return self.positives <= true_predicates and not (self.negatives & true_predicates)

    def violated_in(self, true_predicates: AbstractSet[str]) -> Tuple[Literal, ...]:
        """Literals of this condition that do not hold, in sorted order."""
        return tuple(lit for lit in self.sorted_literals() if not lit.holds_in(true_predicates))


class Effect(LiteralSet):
    """Override: mentioned predicates take the literal's polarity, all others keep theirs."""

    def override(self, true_predicates: FrozenSet[str]) -> FrozenSet[str]:
        return (true_predicates - self.negatives) | self.positives

    def as_condition(self) -> Condition:
        return Condition(self.literals)
