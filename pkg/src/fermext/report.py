from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Violation:
    rule: str
    args: tuple
    lhs: object
    rhs: object

    def __str__(self) -> str:
        return f"{self.rule} at {self.args}: {self.lhs} != {self.rhs}"


@dataclass
class Report:
    """Outcome of a verifier: valid iff no violations were found."""

    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def check(self, rule: str, args: tuple, lhs, rhs) -> None:
        self.checked += 1
        if lhs != rhs:
            self.violations.append(Violation(rule, args, lhs, rhs))

    def __bool__(self) -> bool:
        return self.valid

    def summary(self) -> str:
        if self.valid:
            return f"valid ({self.checked} identities checked)"
        return f"{len(self.violations)} violations out of {self.checked} identities"

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "checked": self.checked,
            "violations": [
                {"rule": v.rule, "args": [list(a) if isinstance(a, tuple) else a for a in v.args],
                 "lhs": str(v.lhs), "rhs": str(v.rhs)}
                for v in self.violations
            ],
        }
