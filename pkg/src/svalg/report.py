from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

SCHEMA = "svalg.report/1"

# violations beyond this many are counted but not stored
MAX_WITNESSES = 20


@dataclass
class Report:
    """Outcome of an exhaustive check: pass flag, work done, witnesses."""

    name: str
    checked: int = 0
    violations: list = field(default_factory=list)
    n_violations: int = 0
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.n_violations == 0

    def fail(self, witness):
        self.n_violations += 1
        if len(self.violations) < MAX_WITNESSES:
            self.violations.append(witness)

    def merge(self, other: "Report"):
        self.checked += other.checked
        for v in other.violations:
            if len(self.violations) < MAX_WITNESSES:
                self.violations.append(v)
        self.n_violations += other.n_violations

    def to_json(self):
        return {
            "check": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "violations": self.n_violations,
            "witnesses": [str(v) for v in self.violations],
            **{k: v for k, v in sorted(self.info.items())},
        }
