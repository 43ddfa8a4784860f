"""Result containers for identity suites."""

from __future__ import annotations

from dataclasses import dataclass, field


class InconsistencyError(RuntimeError):
    """Criteria that must agree by theorem produced different verdicts.

    This always indicates a bug in the implementation, never a property of
    the input.  ``payload`` carries the diagnostic (usually a report).
    """

    def __init__(self, message: str, payload=None):
        super().__init__(message)
        self.payload = payload


@dataclass
class IdentityCheck:
    name: str
    passed: bool
    witness: tuple | None = None
    residual: str | None = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if not self.passed:
            out["witness"] = list(self.witness) if self.witness is not None else None
            out["residual"] = self.residual
        return out


@dataclass
class SuiteResult:
    name: str
    checks: list[IdentityCheck] = field(default_factory=list)
    applicable: bool = True

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[IdentityCheck]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> IdentityCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __len__(self):
        return len(self.checks)

    def names(self) -> list[str]:
        return [c.name for c in self.checks]

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "applicable": self.applicable,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }
