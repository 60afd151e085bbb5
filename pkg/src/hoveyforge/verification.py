"""Small shared vocabulary for verification outcomes."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CheckResult:
    """One named check with a tri-state outcome and JSON-able details."""

    name: str
    status: str
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in (PASS, FAIL, INCONCLUSIVE):
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "details": self.details}


@dataclass
class VerificationReport:
    """An ordered collection of checks plus the bounds that were in force."""

    checks: list[CheckResult] = field(default_factory=list)
    bounds: dict = field(default_factory=dict)

    def add(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        return check

    @property
    def certified(self) -> bool:
        return all(c.status == PASS for c in self.checks)

    @property
    def failed(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def inconclusive(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == INCONCLUSIVE]

    def to_dict(self) -> dict:
        return {"bounds": self.bounds,
                "checks": [c.to_dict() for c in self.checks],
                "certified": self.certified}
