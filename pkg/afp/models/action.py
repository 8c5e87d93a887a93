"""Ground actions: named precondition/effect pairs with a kind and visibility."""

from dataclasses import dataclass
from typing import FrozenSet, Optional

from afp.models.enums import ActionKind
from afp.models.literals import Condition, Effect


@dataclass(frozen=True)
class Action:
    """
    A ground action.

    Operational actions carry exactly one visibility predicate deciding whether
    they are visible (usable by the planner) or hidden. Empowering actions carry
    none and are always available.
    """

    name: str
    kind: ActionKind
    precondition: Condition = Condition()
    effect: Effect = Effect()
    visibility_predicate: Optional[str] = None

    @property
    def is_empowering(self) -> bool:
        return self.kind is ActionKind.EMPOWERING

    @property
    def predicates(self) -> FrozenSet[str]:
        names = self.precondition.predicates | self.effect.predicates
        if self.visibility_predicate is not None:
            names = names | {self.visibility_predicate}
        return names

    def enabled(self, true_predicates: FrozenSet[str]) -> bool:
        """Unchecked applicability test used on search hot paths."""
        return self.precondition.holds_in(true_predicates)

    def successor(self, true_predicates: FrozenSet[str]) -> FrozenSet[str]:
        return self.effect.override(true_predicates)

    def __lt__(self, other: "Action") -> bool:
        return self.name < other.name

    def __str__(self) -> str:
        return self.name
