"""Verification verdicts with per-identity counterexample witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field

from .exact import format_rational


def _fmt(value):
    if isinstance(value, (tuple, list)):
        return [_fmt(v) for v in value]
    if hasattr(value, "denominator"):
        return format_rational(value)
    return value


@dataclass(frozen=True)
class Witness:
    """First violating index tuple of one identity, with both sides."""

    identity: str
    indices: tuple
    lhs: object
    rhs: object

    def to_dict(self) -> dict:
        return {"identity": self.identity, "indices": list(self.indices),
                "lhs": _fmt(self.lhs), "rhs": _fmt(self.rhs)}


@dataclass
class Check:
    """Tally of one identity over an index range; keeps only the first witness."""

    identity: str
    description: str = ""
    evaluated: int = 0
    violations: int = 0
    witness: Witness | None = None

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def compare(self, indices, lhs, rhs) -> bool:
        self.evaluated += 1
        if lhs == rhs:
            return True
        self.violations += 1
        if self.witness is None:
            self.witness = Witness(self.identity, tuple(indices), lhs, rhs)
        return False

    def to_dict(self) -> dict:
        out = {"identity": self.identity, "passed": self.passed,
               "evaluated": self.evaluated, "violations": self.violations}
        if self.description:
            out["description"] = self.description
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        return out


@dataclass
class Verdict:
    """Conjunction of named checks.  ``error`` marks a failed precondition."""

    subject: str
    checks: dict = field(default_factory=dict)
    error: str | None = None

    def check(self, identity: str, description: str = "") -> Check:
        if identity not in self.checks:
            self.checks[identity] = Check(identity, description)
        return self.checks[identity]

    def absorb(self, other: "Verdict", prefix: str = "") -> "Verdict":
        for key, chk in other.checks.items():
            self.checks[prefix + key] = chk
        if other.error and not self.error:
            self.error = other.error
        return self

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.passed for c in self.checks.values())

    @property
    def witness(self) -> Witness | None:
        for chk in self.checks.values():
            if chk.witness is not None:
                return chk.witness
        return None

    @property
    def violations(self) -> int:
        return sum(c.violations for c in self.checks.values())

    def failed(self) -> list:
        return [k for k, c in self.checks.items() if not c.passed]

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self, witness_limit: int | None = None) -> dict:
        checks = [c.to_dict() for c in self.checks.values()]
        if witness_limit is not None:
            shown = 0
            for c in checks:
                if "witness" in c:
                    if shown >= witness_limit:
                        del c["witness"]
                    shown += 1
        out = {"subject": self.subject, "passed": self.passed, "checks": checks}
        if self.error:
            out["error"] = self.error
        return out

    def __repr__(self) -> str:
        state = "pass" if self.passed else f"fail {self.failed() or self.error}"
        return f"Verdict({self.subject!r}, {state})"


class VerificationError(ValueError):
    """A constructor or operation precondition did not verify."""

    def __init__(self, message: str, verdict: Verdict | None = None):
        super().__init__(message)
        self.verdict = verdict


class InternalConsistencyError(AssertionError):
    """A property guaranteed by theory failed: an implementation bug, not bad input."""

    def __init__(self, message: str, verdict: Verdict | None = None):
        super().__init__(message)
        self.verdict = verdict
