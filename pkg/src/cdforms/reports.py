"""Check records and machine-readable reports.

Reports are deterministic: records are appended in a fixed order, numeric
values come from fixed-order summation, and the JSON payload excludes
wall-clock runtimes (those appear only in the human-readable rendering).
"""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
VACUOUS = "vacuous-pass"
UNVERIFIABLE = "unverifiable"
ERROR = "error"

_OK = {PASS, VACUOUS}


@dataclass
class CheckRecord:
    name: str
    status: str
    mode: str = "exact"  # exact | numeric
    detail: str = ""
    value: object = None
    error_estimate: float | None = None
    runtime: float = 0.0

    @property
    def ok(self):
        return self.status in _OK

    def to_dict(self):
        return {
            "name": self.name,
            "status": self.status,
            "mode": self.mode,
            "detail": self.detail,
            "value": _jsonify(self.value),
            "error_estimate": self.error_estimate,
        }


def _jsonify(value):
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


def exact_record(name, ok, residual="", runtime=0.0, vacuous=False):
    if vacuous:
        status = VACUOUS
    else:
        status = PASS if ok else FAIL
    return CheckRecord(
        name=name,
        status=status,
        mode="exact",
        detail="" if ok else f"residual: {residual}",
        runtime=runtime,
    )


def numeric_record(name, value, reference, tol, error_estimate=None, runtime=0.0):
    diff = abs(value - reference)
    ok = diff <= tol
    return CheckRecord(
        name=name,
        status=PASS if ok else FAIL,
        mode="numeric",
        detail=f"|value - reference| = {diff:.3e} (tol {tol:g})",
        value=value,
        error_estimate=error_estimate,
        runtime=runtime,
    )


def error_record(name, exc, runtime=0.0):
    return CheckRecord(
        name=name,
        status=ERROR,
        mode="numeric",
        detail=f"{type(exc).__name__}: {exc}",
        runtime=runtime,
    )


@contextmanager
def timed(records, builder):
    """Append builder(elapsed) to records, timing the body."""
    start = time.perf_counter()
    out = {}
    yield out
    records.append(builder(out, time.perf_counter() - start))


@dataclass
class Report:
    command: str
    config: dict
    records: list = field(default_factory=list)

    @property
    def ok(self):
        return all(r.ok for r in self.records)

    def extend(self, records):
        self.records.extend(records)
        return self

    def to_dict(self):
        return {
            "command": self.command,
            "config": self.config,
            "records": [r.to_dict() for r in self.records],
            "ok": self.ok,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    def render_text(self):
        lines = [f"$ {self.command}"]
        if self.config:
            cfg = ", ".join(f"{k}={v}" for k, v in self.config.items())
            lines.append(f"config: {cfg}")
        for r in self.records:
            mark = {PASS: "PASS", VACUOUS: "PASS (vacuous)", FAIL: "FAIL"}.get(
                r.status, r.status.upper()
            )
            extra = []
            if r.value is not None:
                v = r.value
                if isinstance(v, complex):
                    extra.append(f"value = {v.real:.12g}{v.imag:+.12g}i")
                else:
                    extra.append(f"value = {v}")
            if r.error_estimate is not None:
                extra.append(f"est +/- {r.error_estimate:.2e}")
            if r.detail:
                extra.append(r.detail)
            if r.runtime:
                extra.append(f"{r.runtime:.3f}s")
            suffix = ("  [" + "; ".join(extra) + "]") if extra else ""
            lines.append(f"  {mark:<15} {r.name}{suffix}")
        lines.append("overall: " + ("ok" if self.ok else "FAILED"))
        return "\n".join(lines)

    def exit_code(self):
        return 0 if self.ok else 1
