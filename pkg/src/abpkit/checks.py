"""Verdicts returned by the verify/validate operations.

Failures are data, not exceptions: every checker returns a ``Check`` whose
``reason`` names the first failed condition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

OK = "ok"
FAILED = "failed"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Check:
    status: str
    reason: str = ""
    where: Any = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == OK

    def __bool__(self):
        return self.ok

    @classmethod
    def passed(cls, **details) -> "Check":
        return cls(OK, details=details)

    @classmethod
    def failed(cls, reason: str, where=None, **details) -> "Check":
        return cls(FAILED, reason, where, details)

    @classmethod
    def inconclusive(cls, reason: str, where=None, **details) -> "Check":
        return cls(INCONCLUSIVE, reason, where, details)
