"""Verdict records and the error types shared by every checker."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any

HOLDS = "holds"
UNMET = "hypothesis-unmet"
VIOLATION = "VIOLATION"

DEFAULT_BUDGET = 10**7


class TheoremViolation(AssertionError):
    """A hypothesis was met but the conclusion failed. Always a bug here."""

    def __init__(self, report: "Report"):
        super().__init__(f"{report.theorem}: {report.failed_checks()} witness={report.witness!r}")
        self.report = report


class BudgetExceeded(RuntimeError):
    pass


class HypothesisError(ValueError):
    """Raised when an operation's precondition does not hold."""


def lookup_budget() -> int:
    raw = os.environ.get("TOPRING_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    return int(raw)


def jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in value]
        return sorted(items) if isinstance(value, (set, frozenset)) else items
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if hasattr(value, "item"):  # numpy scalars
        return value.item()
    return value


@dataclass
class Report:
    """Outcome of one theorem check on one instance.

    ``checks`` maps check names to booleans (or to None when the check
    did not apply). ``verdict`` is one of HOLDS, UNMET, VIOLATION.
    """

    theorem: str
    verdict: str = HOLDS
    checks: dict[str, Any] = field(default_factory=dict)
    details: dict[str, Any] = field(default_factory=dict)
    witness: Any = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.verdict != VIOLATION

    def failed_checks(self) -> list[str]:
        return [k for k, v in self.checks.items() if v is False]

    def require(self, name: str, value: bool, witness: Any = None) -> bool:
        """Record a conclusion that must hold; a False marks a violation."""
        self.checks[name] = bool(value)
        if not value:
            self.verdict = VIOLATION
            if self.witness is None:
                self.witness = {"check": name, "data": witness}
        return bool(value)

    def record(self, name: str, value: Any) -> Any:
        self.checks[name] = value
        return value

    def finish(self) -> "Report":
        if self.verdict == VIOLATION:
            raise TheoremViolation(self)
        return self

    def to_dict(self) -> dict[str, Any]:
        return {
            "theorem": self.theorem,
            "verdict": self.verdict,
            "checks": jsonable(self.checks),
            "details": jsonable(self.details),
            "witness": jsonable(self.witness),
            "notes": list(self.notes),
        }
