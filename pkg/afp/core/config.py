"""
Configuration management for the antifragile planning runtime.

This module handles all runtime configuration through environment variables
using Pydantic Settings for type safety and validation.
"""

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

_LOG_LEVELS = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
_LOG_FORMATS = {"json", "console"}


class Settings(BaseSettings):
    """Runtime settings loaded from environment variables (prefix ``AFP_``)."""

    model_config = SettingsConfigDict(
        env_prefix="AFP_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    # Application Settings
    APP_NAME: str = "Antifragile Planner"
    APP_VERSION: str = "0.1.0"

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = "json"

    # Search Settings
    SEARCH_NODE_BUDGET: int = Field(
        default=1_000_000,
        description="Maximum node expansions per planner search",
    )
    CLASSIFY_STATE_BUDGET: int = Field(
        default=200_000,
        description="Maximum states enumerated per mission during classification",
    )
    ORACLE_PREDICATE_LIMIT: int = Field(
        default=14,
        description="Largest predicate set the brute-force oracle enumerates in full",
    )
    STRENGTH_BOUND: int = Field(
        default=10,
        description="Plan length bound L used by the strength metric",
    )

    # Simulation Settings
    MAX_MISSIONS: int = 16
    DEFAULT_SEED: int = 0
    RENDER_FINE: bool = True

    @field_validator(
        "SEARCH_NODE_BUDGET",
        "CLASSIFY_STATE_BUDGET",
        "ORACLE_PREDICATE_LIMIT",
        "MAX_MISSIONS",
    )
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """Budgets and limits must be positive."""
        if v <= 0:
            raise ValueError("must be a positive integer")
        return v

    @field_validator("STRENGTH_BOUND")
    @classmethod
    def validate_bound(cls, v: int) -> int:
        if v < 0:
            raise ValueError("STRENGTH_BOUND must be >= 0")
        return v

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def parse_log_level(cls, v: str) -> str:
        """Normalise and validate the log level name."""
        level = str(v).strip().upper()
        if level not in _LOG_LEVELS:
            raise ValueError(f"LOG_LEVEL must be one of {sorted(_LOG_LEVELS)}")
        return level

    @field_validator("LOG_FORMAT", mode="before")
    @classmethod
    def parse_log_format(cls, v: str) -> str:
        fmt = str(v).strip().lower()
        if fmt not in _LOG_FORMATS:
            raise ValueError(f"LOG_FORMAT must be one of {sorted(_LOG_FORMATS)}")
        return fmt


# Create global settings instance
settings = Settings()
