"""A complete, grounded scenario: domain, environment, policy and grid metadata."""

from dataclasses import dataclass, field
from typing import FrozenSet, Optional, Tuple

from afp.models.domain import Domain, Environment
from afp.models.recommendation import AnalyzerPolicy


@dataclass(frozen=True)
class GridLayout:
    """Rendering metadata for grid scenarios; predicate names follow the gridbot builder."""

    cols: int
    rows: int
    fine_factor: int = 1
    spill_cells: FrozenSet[Tuple[int, int]] = frozenset()
    blocked_cells: FrozenSet[Tuple[int, int]] = frozenset()
    slippery_cells: FrozenSet[Tuple[int, int]] = frozenset()


@dataclass(frozen=True)
class Scenario:
    name: str
    domain: Domain
    environment: Environment
    policy: AnalyzerPolicy = field(default_factory=AnalyzerPolicy)
    seed: int = 0
    grid: Optional[GridLayout] = None
