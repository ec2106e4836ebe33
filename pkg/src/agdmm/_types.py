"""Importance levels and the message record returned by every registered check."""

from dataclasses import dataclass, fields
from enum import Enum
from typing import Optional


class Importance(Enum):
    """How urgently an audit finding needs attention; ERROR is reserved for checks that raised."""

    ERROR = 3
    CRITICAL = 2
    BEST_PRACTICE_VIOLATION = 1
    BEST_PRACTICE_SUGGESTION = 0


class Severity(Enum):
    """Orders messages of equal importance within a report section."""

    HIGH = 2
    LOW = 1


@dataclass
class AuditMessage:
    """
    A single audit finding.

    Checks only set ``message`` and, optionally, ``severity``; the registration decorator fills in the rest.

    Parameters
    ----------
    message : str
        What is wrong, naming the offending values.
    importance : Importance
        Taken from the decorator of the check, or from an audit configuration.
    severity : Severity
        HIGH lists the message ahead of LOW ones of the same importance, e.g. for large threshold gaps.
    check_function_name : str
    object_type : str
        NumericalSemigroup, SolutionPair or CodeScheme.
    object_name : str
        "<3, 4>" for a semigroup, "apery poly" for a solution, "apery poly on <curve>" for a scheme.
    location : str
        "/" for a scheme, "/solution" for its solution pair and "/solution/semigroup" for its semigroup.
    """

    message: str
    importance: Importance = Importance.BEST_PRACTICE_SUGGESTION
    severity: Severity = Severity.LOW
    check_function_name: Optional[str] = None
    object_type: Optional[str] = None
    object_name: Optional[str] = None
    location: Optional[str] = None

    def __repr__(self) -> str:
        """One field per line, as black would lay out the constructor call."""
        body = ",\n".join(f"    {field.name}={getattr(self, field.name)!r}" for field in fields(self))
        return f"AuditMessage(\n{body}\n)"
