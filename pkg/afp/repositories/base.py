"""
Base repository providing document persistence on the filesystem.

Repositories translate between files (or raw JSON text) and pydantic
documents, turning decode failures into ``ScenarioParseError`` with the
line and column of the offending input.
"""

import json
from pathlib import Path
from typing import Any, Dict, Generic, Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from afp.core.exceptions import ScenarioParseError

# Type variable for generic repository
D = TypeVar("D", bound=BaseModel)

Source = Union[str, Path, Dict[str, Any]]


class DocumentRepository(Generic[D]):
    """
    Base repository reading and writing one pydantic document type.
    """

    def __init__(self, model: Type[D]):
        self.model = model

    def parse(self, source: Source) -> D:
        """
        Parse a document from a path, JSON text or an already-decoded mapping.

        Args:
            source: File path, JSON string, or dict

        Returns:
            The validated document

        Raises:
            ScenarioParseError: On malformed JSON or schema violations
        """
        if isinstance(source, dict):
            payload: Any = source
        else:
            text = self.read_text(source)
            try:
                payload = json.loads(text)
            except json.JSONDecodeError as e:
                raise ScenarioParseError(e.msg, line=e.lineno, column=e.colno) from None
        try:
            return self.model.model_validate(payload)
        except ValidationError as e:
            first = e.errors()[0]
            where = ".".join(str(part) for part in first["loc"])
            raise ScenarioParseError(f"{where}: {first['msg']}") from None

    @staticmethod
    def read_text(source: Union[str, Path]) -> str:
        """Read from a path when ``source`` names an existing file, else treat it as text."""
        if isinstance(source, Path):
            return source.read_text(encoding="utf-8")
        stripped = source.lstrip()
        if stripped.startswith("{") or stripped.startswith("["):
            return source
        path = Path(source)
        if not path.exists():
            raise ScenarioParseError(f"No such document '{source}'")
        return path.read_text(encoding="utf-8")

    def dumps(self, document: D) -> str:
        return document.model_dump_json(indent=2, by_alias=True) + "\n"

    def save(self, document: D, path: Union[str, Path]) -> Path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(self.dumps(document), encoding="utf-8")
        return target
