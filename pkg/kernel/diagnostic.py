"""
Diagnostic records for validation findings and analysis traces.
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional


@dataclass
class Diagnostic:
    """A single finding about a program or a step of an analysis."""

    kind: str  # "range-restriction", "arity-conflict", "declaration-conflict", "not-flat", "trace"
    message: str
    rule_id: Optional[str] = None
    line: Optional[int] = None
    severity: str = "error"
    metadata: Optional[Dict[str, Any]] = None

    def __post_init__(self):
        if self.metadata is None:
            self.metadata = {}

    def __str__(self) -> str:
        where = f" ({self.rule_id}, line {self.line})" if self.rule_id and self.line else ""
        if self.rule_id and not self.line:
            where = f" ({self.rule_id})"
        return f"{self.severity}: {self.kind}: {self.message}{where}"

    def to_dict(self) -> Dict[str, Any]:
        """Convert diagnostic to dictionary format."""
        return {
            "kind": self.kind,
            "message": self.message,
            "rule_id": self.rule_id,
            "line": self.line,
            "severity": self.severity,
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Diagnostic":
        """Create diagnostic from dictionary."""
        return cls(
            kind=data["kind"],
            message=data["message"],
            rule_id=data.get("rule_id"),
            line=data.get("line"),
            severity=data.get("severity", "error"),
            metadata=data.get("metadata", {}),
        )
