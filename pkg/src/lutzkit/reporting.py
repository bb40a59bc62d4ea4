"""Line-oriented check reports shared by the verification battery and CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckResult:
    name: str
    expected: str
    got: str
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"CHECK {self.name} {status} expected={self.expected} got={self.got}"


@dataclass
class VerificationReport:
    """Ordered check results; every check is recorded even when it fails."""

    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, expected, got) -> CheckResult:
        result = CheckResult(name, str(expected), str(got), expected == got)
        self.checks.append(result)
        return result

    def add_outcome(self, name: str, passed: bool, expected: str, got: str) -> CheckResult:
        result = CheckResult(name, expected, got, passed)
        self.checks.append(result)
        return result

    def add_sweep(self, name: str, expected, failures: list[str]) -> CheckResult:
        """Record a quantified check: pass iff the sweep saw no violation;
        on failure the first offending case is reported as `got`."""
        got = str(expected) if not failures else failures[0]
        return self.add_outcome(name, not failures, str(expected), got)

    def extend(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def counts(self) -> tuple[int, int]:
        good = sum(1 for c in self.checks if c.passed)
        return good, len(self.checks)

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def render(self) -> str:
        good, total = self.counts
        return "\n".join(self.lines() + [f"summary {good}/{total} checks passed"]) + "\n"
