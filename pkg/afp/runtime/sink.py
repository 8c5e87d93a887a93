"""Where runtime components send trace events."""

from typing import Any, List, Optional, Type

from typing_extensions import Protocol

from afp.models.domain import Domain
from afp.models.enums import VisibilityCause
from afp.models.state import State
from afp.schemas.trace import EventBase, VisibilityChanged


class TraceSink(Protocol):
    def emit(self, event_type: Type[EventBase], **fields: Any) -> Optional[EventBase]:
        ...


class NullSink:
    """Discards every event."""

    def emit(self, event_type: Type[EventBase], **fields: Any) -> Optional[EventBase]:
        return None


def emit_visibility_changes(
    sink: TraceSink, domain: Domain, pre: State, post: State, cause: VisibilityCause
) -> List[str]:
    """Emit one VisibilityChanged per visibility predicate that differs; returns their names."""
    changed = sorted((pre.true ^ post.true) & domain.visibility_predicates)
    for predicate in changed:
        sink.emit(VisibilityChanged, predicate=predicate, value=predicate in post.true, cause=cause.value)
    return changed
