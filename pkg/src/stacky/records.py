"""Verification records shared by the zeta checker and the CLI.

A record compares one formula-side value against one observed value.  The
status REPORT is reserved for comparisons whose governing hypothesis (the
characteristic dividing neither weight) fails: the record still shows both
sides but asserts nothing and never affects an exit code.
"""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "PASS"
FAIL = "FAIL"
REPORT = "REPORT"


@dataclass
class VerificationRecord:
    check: str
    inputs: dict = field(default_factory=dict)
    expected: str = ""
    observed: str = ""
    status: str = PASS
    elapsed_ms: int = 0

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "inputs": self.inputs,
            "expected": self.expected,
            "observed": self.observed,
            "status": self.status,
            "elapsed_ms": self.elapsed_ms,
        }


def compare(check: str, inputs: dict, expected, observed, *, report_only=False,
            elapsed_ms: int = 0) -> VerificationRecord:
    """Build a record; equality decides PASS/FAIL unless report_only."""
    if report_only:
        status = REPORT
    else:
        status = PASS if expected == observed else FAIL
    return VerificationRecord(
        check=check,
        inputs=inputs,
        expected=str(expected),
        observed=str(observed),
        status=status,
        elapsed_ms=elapsed_ms,
    )
