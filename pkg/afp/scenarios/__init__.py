"""Built-in scenarios."""

from .gridbot import GridSpec, build, build_mini, mini_spec

__all__ = ["GridSpec", "build", "build_mini", "mini_spec"]
