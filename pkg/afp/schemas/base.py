"""
Base Pydantic schemas shared by every document the package emits.

All documents serialize deterministically (declared field order, no
timestamps) so equal inputs give byte-identical output.
"""

from typing import Any, Dict, Generic, Optional, TypeVar

from pydantic import BaseModel, ConfigDict, Field

# Type variable for generic result documents
T = TypeVar("T")


class BaseDocument(BaseModel):
    """Base document model with common configuration."""

    model_config = ConfigDict(
        extra="forbid",
        populate_by_name=True,
        use_enum_values=True,
    )

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True)


class ResultDocument(BaseDocument, Generic[T]):
    """Standard success wrapper printed by the CLI."""

    success: bool = Field(default=True, description="Always true for success documents")
    command: str = Field(description="CLI command that produced the result")
    data: T = Field(description="The result payload")


class ErrorDocument(BaseDocument):
    """Standard error wrapper printed by the CLI."""

    success: bool = Field(default=False, description="Always false for error documents")
    error: str = Field(description="Error message")
    error_code: Optional[str] = Field(default=None, description="Stable error code")
    details: Optional[Dict[str, Any]] = Field(default=None, description="Additional error details")
