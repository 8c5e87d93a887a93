"""Hypothesis strategies for small random planning systems."""

from typing import NamedTuple, Tuple

from hypothesis import strategies as st

from afp.models.action import Action
from afp.models.domain import Domain, Environment, Mission
from afp.models.enums import ActionKind
from afp.models.hazard import HazardRule
from afp.models.literals import Condition, Effect, Literal
from afp.models.state import State

VIS = "vis"


class RandomSystem(NamedTuple):
    domain: Domain
    env: Environment
    start: State
    goal: Condition
    hazards: Tuple[HazardRule, ...]


def _literal_sets(predicates, min_size, max_size):
    literal = st.builds(Literal, st.sampled_from(predicates), st.booleans())
    return st.lists(
        literal, min_size=min_size, max_size=max_size, unique_by=lambda lit: lit.predicate
    ).map(frozenset)


@st.composite
def random_systems(draw, max_predicates: int = 12, max_actions: int = 10, max_hazards: int = 4) -> RandomSystem:
    """
    Small closed-world systems: up to ``max_predicates`` state predicates plus
    one visibility predicate that every action shares and nothing writes.
    """
    n = draw(st.integers(min_value=2, max_value=max_predicates))
    names = [f"p{i}" for i in range(n)]
    predicates = tuple(names) + (VIS,)

    actions = tuple(
        Action(
            name=f"a{i}",
            kind=ActionKind.OPERATIONAL,
            precondition=Condition(draw(_literal_sets(names, 0, 3))),
            effect=Effect(draw(_literal_sets(names, 1, 3))),
            visibility_predicate=VIS,
        )
        for i in range(draw(st.integers(min_value=1, max_value=max_actions)))
    )
    hazards = tuple(
        HazardRule(
            name=f"h{i}",
            source=Condition(draw(_literal_sets(names, 1, 3))),
            consequence=Effect(draw(_literal_sets(names, 1, 2))),
            tags=frozenset({"random"}),
        )
        for i in range(draw(st.integers(min_value=0, max_value=max_hazards)))
    )
    true = draw(st.sets(st.sampled_from(names)))
    start = State.closed_world(predicates, true | {VIS})
    goal = Condition(draw(_literal_sets(names, 1, 2)))

    domain = Domain(predicates=predicates, actions=actions, waypoints=(Condition.of(VIS),))
    env = Environment(initial_state=start, missions=(Mission(goal=goal, name="random"),), hazards=hazards)
    return RandomSystem(domain, env, start, goal, hazards)
