"""
Trace repository: newline-delimited JSON, one event per line.

The first line is a header carrying the run parameters; every following line
is a trace event discriminated by ``kind``.
"""

import json
from pathlib import Path
from typing import Union

from pydantic import ValidationError

from afp.core.exceptions import ScenarioParseError
from afp.schemas.trace import TraceDocument, trace_event_adapter

HEADER_KIND = "TraceHeader"


def dumps_trace(trace: TraceDocument) -> str:
    """Serialize a trace to NDJSON text; equal traces give identical text."""
    header = {"kind": HEADER_KIND, "scenario": trace.scenario, "seed": trace.seed, "max_missions": trace.max_missions}
    lines = [json.dumps(header, sort_keys=True, separators=(",", ":"))]
    for event in trace.events:
        payload = event.model_dump(mode="json", by_alias=True)
        lines.append(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    return "\n".join(lines) + "\n"


def loads_trace(text: str) -> TraceDocument:
    """
    Parse NDJSON trace text.

    Raises:
        ScenarioParseError: On a malformed line, naming the line number
    """
    rows = [(number, line) for number, line in enumerate(text.splitlines(), start=1) if line.strip()]
    if not rows:
        raise ScenarioParseError("Empty trace")
    header = _decode(*rows[0])
    if header.get("kind") != HEADER_KIND:
        raise ScenarioParseError("Trace header missing", line=rows[0][0], column=1)

    events = []
    for number, line in rows[1:]:
        try:
            events.append(trace_event_adapter.validate_python(_decode(number, line)))
        except ValidationError as e:
            raise ScenarioParseError(f"invalid event: {e.errors()[0]['msg']}", line=number, column=1) from None
    return TraceDocument(
        scenario=header.get("scenario", ""),
        seed=int(header.get("seed", 0)),
        max_missions=int(header.get("max_missions", 0)),
        events=events,
    )


def _decode(number: int, line: str) -> dict:
    try:
        value = json.loads(line)
    except json.JSONDecodeError as e:
        raise ScenarioParseError(e.msg, line=number, column=e.colno) from None
    if not isinstance(value, dict):
        raise ScenarioParseError("event is not an object", line=number, column=1)
    return value


def save_trace(trace: TraceDocument, path: Union[str, Path]) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(dumps_trace(trace), encoding="utf-8")
    return target


def load_trace(path: Union[str, Path]) -> TraceDocument:
    source = Path(path)
    if not source.exists():
        raise ScenarioParseError(f"No such trace '{path}'")
    return loads_trace(source.read_text(encoding="utf-8"))


