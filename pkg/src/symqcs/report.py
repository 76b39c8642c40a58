"""Verification reports: a named list of violated cells plus free-form details."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    name: str
    violations: list = field(default_factory=list)
    checked: int = 0
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def fail(self, *cell) -> None:
        self.violations.append(tuple(cell))

    def cells(self, kind: str | None = None) -> list:
        return [v for v in self.violations if kind is None or v[0] == kind]

    def merge(self, other: "Report") -> "Report":
        self.violations.extend(other.violations)
        self.checked += other.checked
        return self

    def to_json(self) -> dict[str, Any]:
        return {
            "check": self.name,
            "status": "verified" if self.ok else "violated",
            "checked": self.checked,
            "violations": [list(v) for v in self.violations],
            **({"details": self.details} if self.details else {}),
        }
