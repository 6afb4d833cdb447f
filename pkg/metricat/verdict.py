"""Outcome of a check: status, worst violation and witnesses.

All checks in metricat report through :class:`CheckVerdict`. They are built with
:class:`VerdictBuilder`, which keeps track of the worst violation and of a
bounded number of failing witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

EXACT_TOL = 1e-9
"""Default tolerance for spaces whose oracles are exact."""
SAMPLED_TOL = 1e-6
"""Default tolerance for sampled or searched quantities."""
MAX_WITNESSES = 10


class Status(str, Enum):
    """Possible outcomes of a check."""

    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"
    SKIPPED = "SKIPPED"


@dataclass(frozen=True)
class CheckVerdict():
    """Result of a sampled check.

    Parameters
    ----------
    status:
        Outcome of the check.
    worst_violation:
        Largest value of ``lhs - rhs`` over all tested cases, where the checked
        inequality reads ``lhs <= rhs``. Negative values mean that every case
        had slack.
    witness:
        Failing cases (at most :data:`MAX_WITNESSES`), each as a dictionary with
        the points and parameters that produce the violation.
    details:
        Free form information: number of cases, reasons for skipping, etc.
    """

    status: Status
    worst_violation: float = 0.0
    witness: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """Whether the check passed."""
        return self.status == Status.PASS

    @property
    def failed(self) -> bool:
        """Whether the check found a violation."""
        return self.status == Status.FAIL

    @classmethod
    def skipped(cls, reason: str) -> CheckVerdict:
        """Create a verdict for a check that could not be run."""
        return cls(Status.SKIPPED, 0.0, [], {"reason": reason})

    def to_dict(self) -> dict:
        """Convert the verdict to a dictionary."""
        return {
            "status": self.status.value,
            "worst_violation": self.worst_violation,
            "witness": list(self.witness),
            "details": dict(self.details),
        }


class VerdictBuilder():
    """Accumulate cases of an inequality check into a verdict.

    Parameters
    ----------
    tol:
        A case fails when its violation exceeds this tolerance.
    max_witnesses:
        Maximum number of failing cases that are stored.
    """

    def __init__(self, tol: float, max_witnesses: int = MAX_WITNESSES):
        self.tol = tol
        self.max_witnesses = max_witnesses
        self.worst = -float("inf")
        self.worst_case: Optional[dict] = None
        self.failures: list[dict] = []
        self.n_cases = 0
        self.n_failed = 0
        self.inconclusive_reasons: list[str] = []

    def record(self, violation: float, **witness: Any) -> bool:
        """Record one tested case.

        Parameters
        ----------
        violation:
            Value of ``lhs - rhs`` for this case.
        witness:
            Points and parameters describing the case.

        Returns
        -------
            Whether the case failed.
        """
        self.n_cases += 1
        case = dict(witness, violation=float(violation))
        if violation > self.worst:
            self.worst = float(violation)
            self.worst_case = case
        if violation > self.tol:
            self.n_failed += 1
            if len(self.failures) < self.max_witnesses:
                self.failures.append(case)
            return True
        return False

    def inconclusive(self, reason: str) -> None:
        """Mark the check as not decidable, unless a failure is found."""
        self.inconclusive_reasons.append(reason)

    def build(self, **details: Any) -> CheckVerdict:
        """Create the verdict from the recorded cases."""
        details = dict(details, cases=self.n_cases, failed_cases=self.n_failed)
        worst = self.worst if self.n_cases > 0 else 0.0
        if self.n_failed > 0:
            # Worst case first, so that the first witness carries the reported magnitude.
            witness = sorted(self.failures, key=lambda case: -case["violation"])
            if not any(case is self.worst_case for case in witness):
                witness = [self.worst_case] + witness[:self.max_witnesses - 1]
            return CheckVerdict(Status.FAIL, worst, witness, details)
        if self.inconclusive_reasons:
            details["reasons"] = self.inconclusive_reasons[:self.max_witnesses]
            return CheckVerdict(Status.INCONCLUSIVE, worst, [], details)
        if self.n_cases == 0:
            details["reason"] = "no cases were tested"
            return CheckVerdict(Status.INCONCLUSIVE, worst, [], details)
        return CheckVerdict(Status.PASS, worst, [], details)
