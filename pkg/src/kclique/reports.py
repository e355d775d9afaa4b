"""Verification reports and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

PASS = "pass"
FAIL = "fail"


@dataclass
class VerificationReport:
    """Outcome of checking one claim on one instance.

    ``values`` holds exact integers; they are written to JSON as decimal
    strings so no consumer can silently round them.
    """

    claim: str
    instance: dict
    values: dict[str, int]
    verdict: str
    details: str = ""
    hypotheses_met: bool = True
    weightings: dict[str, list[int]] = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> dict:
        d = {
            "claim": self.claim,
            "instance": self.instance,
            "values": {k: str(v) if isinstance(v, int) and not isinstance(v, bool) else v for k, v in self.values.items()},
            "verdict": self.verdict,
            "hypotheses_met": self.hypotheses_met,
            "details": self.details,
        }
        if self.weightings:
            d["weightings"] = self.weightings
        if self.extra:
            d.update(self.extra)
        return d

    def to_json(self, indent: Optional[int] = 2) -> str:
        return dumps(self.to_dict(), indent)


def dumps(obj, indent: Optional[int] = 2) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, indent=indent, sort_keys=True) + "\n"
