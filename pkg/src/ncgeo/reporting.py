"""Check results and deterministic JSON reports.

Every verification in the library returns a :class:`CheckResult` (exact
checks) or a :class:`VerdictReport` (numeric checks).  A :class:`Report`
bundles them for the command-line tools; identical runs serialize to
byte-identical JSON apart from the ``generated_at`` field.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

SCHEMA = "ncgeo-report/1"
TOOL_VERSION = "0.1.0"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one exact (or matrix-evaluated) identity check."""

    check_id: str
    statement: str
    mode: str  # "exact" | "numeric"
    passed: bool
    witness: object = None       # offending entries on failure, JSON-able
    residual: float | None = None
    extra: dict | None = None

    def to_json(self) -> dict:
        out = {
            "id": self.check_id,
            "statement": self.statement,
            "mode": self.mode,
            "pass": self.passed,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.residual is not None:
            out["residual"] = float(self.residual)
        if self.extra:
            out["details"] = self.extra
        return out


@dataclass(frozen=True)
class VerdictReport:
    """Numeric verification outcome with dimension/residual provenance."""

    check_id: str
    statement: str
    verdict: str  # numeric-equal | proved-equal | proved-unequal | inconclusive
    residuals: tuple[float, ...] = ()
    dims: tuple[int, ...] = ()
    stable: bool = True
    extra: dict | None = None

    @property
    def passed(self) -> bool:
        return self.verdict in ("numeric-equal", "proved-equal")

    def to_json(self) -> dict:
        out = {
            "id": self.check_id,
            "statement": self.statement,
            "mode": "numeric",
            "pass": self.passed,
            "verdict": self.verdict,
            "dims": list(self.dims),
            "residuals": [float(r) for r in self.residuals],
            "stable": self.stable,
        }
        if self.extra:
            out["details"] = self.extra
        return out


@dataclass
class Report:
    """Deterministically ordered collection of check outcomes."""

    command: str
    presentation: str
    checks: list = field(default_factory=list)

    def add(self, check) -> None:
        self.checks.append(check)

    def extend(self, checks) -> None:
        self.checks.extend(checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary(self) -> dict:
        passed = sum(1 for c in self.checks if c.passed)
        return {
            "total": len(self.checks),
            "passed": passed,
            "failed": len(self.checks) - passed,
        }

    def to_json(self, include_timestamp: bool = True) -> dict:
        out = {
            "schema": SCHEMA,
            "tool": {"name": "ncgeo", "version": TOOL_VERSION},
            "command": self.command,
            "presentation": self.presentation,
            "checks": [c.to_json() for c in self.checks],
            "summary": self.summary(),
        }
        if include_timestamp:
            out["generated_at"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
        return out

    def to_json_text(self, include_timestamp: bool = True) -> str:
        return json.dumps(
            self.to_json(include_timestamp), sort_keys=True, indent=2
        )

    def to_text(self) -> str:
        lines = [f"ncgeo {TOOL_VERSION} -- {self.command} [{self.presentation}]"]
        width = max((len(c.check_id) for c in self.checks), default=0)
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            residual = ""
            if isinstance(c, VerdictReport) and c.residuals:
                residual = f"  max-residual={max(c.residuals):.3e}"
            elif isinstance(c, CheckResult) and c.residual is not None:
                residual = f"  residual={c.residual:.3e}"
            lines.append(f"  {c.check_id:<{width}}  {status}{residual}")
        s = self.summary()
        lines.append(f"  -- {s['passed']}/{s['total']} checks passed")
        return "\n".join(lines)
