"""Core configuration, error hierarchy and logging setup."""
