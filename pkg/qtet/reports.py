"""Check findings and their JSON / text renderings.

Verifiers return ``(ok, payload)`` where the payload is either the certified
object or a :class:`Report` naming what failed.
"""
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import pandas as pd


class InputError(ValueError):
    """Malformed input: bad JSON, wrong sizes, invalid q, unknown names."""


class CertificationError(RuntimeError):
    """A check that must pass on certified input failed."""

    def __init__(self, report: "Report"):
        self.report = report
        first = report.first
        where = f" at {first.location}" if first and first.location else ""
        super().__init__(f"{report.subject}: {first.check if first else 'unknown'}{where}")


@dataclass(frozen=True)
class Finding:
    check: str
    location: str = ""
    residual: Optional[List[List[str]]] = None
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"check": self.check, "location": self.location}
        if self.residual is not None:
            out["residual"] = self.residual
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Report:
    subject: str = ""
    findings: List[Finding] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.findings

    @property
    def first(self) -> Optional[Finding]:
        return self.findings[0] if self.findings else None

    def fail(self, check: str, location: str = "", residual=None, note: str = "") -> None:
        self.findings.append(Finding(check, str(location), residual, note))

    def extend(self, other: "Report") -> "Report":
        self.findings.extend(other.findings)
        for k, v in other.details.items():
            self.details.setdefault(k, v)
        return self

    def checks(self) -> List[str]:
        return [f.check for f in self.findings]

    def to_json(self) -> Dict[str, Any]:
        out = {
            "subject": self.subject,
            "ok": self.ok,
            "findings": [f.to_dict() for f in self.findings],
        }
        out.update(self.details)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        head = f"{self.subject}: {'PASS' if self.ok else 'FAIL'}"
        lines = [head]
        for k in sorted(self.details):
            v = self.details[k]
            if isinstance(v, (str, int, float, bool)) or v is None:
                lines.append(f"  {k}: {v}")
            else:
                lines.append(f"  {k}: {json.dumps(v, sort_keys=True)}")
        if self.findings:
            df = pd.DataFrame(
                [{"check": f.check, "location": f.location, "note": f.note} for f in self.findings]
            )
            lines.append(df.to_string(index=False))
        return "\n".join(lines)
