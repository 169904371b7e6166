"""Outcome of a property check."""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional


@dataclass
class VerificationReport:
    """Result of checking one property on one or more instances."""

    name: str
    holds: bool = True
    checked: int = 0
    details: Dict[str, Any] = field(default_factory=dict)
    counterexample: Optional[Any] = None
    message: str = ""

    def fail(self, message: str, counterexample: Any = None, **details: Any) -> "VerificationReport":
        self.holds = False
        self.message = message
        self.counterexample = counterexample
        self.details.update(details)
        return self

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        """Fold a per-instance report into an aggregate one."""
        self.checked += other.checked
        if not other.holds and self.holds:
            self.holds = False
            self.message = other.message
            self.counterexample = other.counterexample
            self.details.update(other.details)
        return self
