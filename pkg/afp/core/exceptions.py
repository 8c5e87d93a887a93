"""
Custom exception classes for the antifragile planning runtime.

This module contains the error hierarchy used throughout the package. Every
error carries a human-readable ``detail`` and a stable ``error_code`` so the
CLI and callers can branch on the kind of failure without parsing messages.
"""

from typing import Any, Dict, List, Optional, Sequence


class AfpError(Exception):
    """Base exception for all runtime errors."""

    def __init__(
        self,
        detail: str,
        error_code: str = "AFP_ERROR",
        context: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(detail)
        self.detail = detail
        self.error_code = error_code
        self.context = context or {}

    def to_dict(self) -> Dict[str, Any]:
        """Serialize the error for structured output."""
        return {"error": self.detail, "error_code": self.error_code, **self.context}


class DomainIntegrityError(AfpError):
    """Exception raised when a domain references undeclared predicates or is malformed."""

    def __init__(self, detail: str = "Domain integrity error", error_code: str = "DOMAIN_INTEGRITY"):
        super().__init__(detail=detail, error_code=error_code)


class PreconditionViolation(AfpError):
    """Exception raised when an action is applied in a state violating its precondition."""

    def __init__(
        self,
        action: str,
        failing: Sequence[str],
        step_index: Optional[int] = None,
        error_code: str = "PRECONDITION_VIOLATION",
    ):
        where = f" at step {step_index}" if step_index is not None else ""
        super().__init__(
            detail=f"Action '{action}' not applicable{where}: failing {list(failing)}",
            error_code=error_code,
            context={"action": action, "failing": list(failing), "step_index": step_index},
        )
        self.action = action
        self.failing = list(failing)
        self.step_index = step_index


class SearchBudgetExhausted(AfpError):
    """Exception raised when a search or enumeration runs out of its node budget."""

    def __init__(self, budget: int, expanded: int, error_code: str = "BUDGET_EXHAUSTED"):
        super().__init__(
            detail=f"Search budget of {budget} exhausted after {expanded} expansions",
            error_code=error_code,
            context={"budget": budget, "expanded": expanded},
        )
        self.budget = budget
        self.expanded = expanded


class OracleLimitExceeded(AfpError):
    """Exception raised when the oracle is asked to enumerate too many predicates."""

    def __init__(self, predicates: int, limit: int, error_code: str = "ORACLE_LIMIT"):
        super().__init__(
            detail=f"Oracle supports at most {limit} predicates, domain has {predicates}",
            error_code=error_code,
            context={"predicates": predicates, "limit": limit},
        )


class DisciplineViolation(AfpError):
    """Exception raised when the visibility-write discipline would be broken."""

    def __init__(self, detail: str, error_code: str = "VISIBILITY_DISCIPLINE"):
        super().__init__(detail=detail, error_code=error_code)


class ScenarioParseError(AfpError):
    """Exception raised when a scenario document cannot be parsed."""

    def __init__(
        self,
        detail: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        error_code: str = "SCENARIO_PARSE",
    ):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(
            detail=f"{detail}{where}",
            error_code=error_code,
            context={"line": line, "column": column},
        )
        self.line = line
        self.column = column


class ScenarioValidationError(AfpError):
    """Exception raised when a scenario fails domain validation."""

    def __init__(self, violations: List[Any], error_code: str = "SCENARIO_INVALID"):
        super().__init__(
            detail=f"Scenario has {len(violations)} validation violation(s)",
            error_code=error_code,
            context={"violations": [str(v) for v in violations]},
        )
        self.violations = list(violations)


class GridSpecError(AfpError):
    """Exception raised when a grid specification is inconsistent."""

    def __init__(self, detail: str, error_code: str = "GRID_SPEC"):
        super().__init__(detail=detail, error_code=error_code)


class UnsupportedRenderError(AfpError):
    """Exception raised when rendering is requested for a scenario without grid metadata."""

    def __init__(
        self,
        detail: str = "Scenario declares no grid metadata",
        error_code: str = "RENDER_UNSUPPORTED",
    ):
        super().__init__(detail=detail, error_code=error_code)


class StepFailure(AfpError):
    """Exception raised when the executor meets an inapplicable step with no hazard injected."""

    def __init__(self, index: int, action: str, failing: Sequence[str], error_code: str = "STEP_FAILURE"):
        super().__init__(
            detail=f"Step {index} ('{action}') failed without a hazard: {list(failing)}",
            error_code=error_code,
            context={"index": index, "action": action, "failing": list(failing)},
        )
        self.index = index
        self.action = action
