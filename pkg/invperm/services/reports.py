"""
Report models shared by the counting paths, the OEIS cross-check and the
verification suite, plus their json / csv / plain renderings.

Counts are arbitrary-precision integers and travel as decimal strings.
"""

import io
import csv
import json
from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_serializer


class Method(str, Enum):
    ORACLE = "oracle"
    FAST = "fast"
    GF = "gf"
    ALL = "all"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    PLAIN = "plain"


class Term(BaseModel):
    k: int
    value: int

    @field_serializer("value")
    def _value_as_decimal(self, value: int) -> str:
        return str(value)


class Mismatch(BaseModel):
    k: int
    method: str
    reference: str
    expected: int
    actual: int

    @field_serializer("expected", "actual")
    def _counts_as_decimal(self, value: int) -> str:
        return str(value)


class CountReport(BaseModel):
    patterns: List[str]
    method: str
    terms: List[Term] = Field(default_factory=list)
    mismatches: List[Mismatch] = Field(default_factory=list)
    elapsed_ms: int = 0
    offset: Optional[int] = None
    source: Optional[str] = None

    @classmethod
    def from_values(cls, patterns: List[str], method: str, values: Dict[int, int], **extra) -> "CountReport":
        terms = [Term(k=k, value=values[k]) for k in sorted(values)]
        return cls(patterns=patterns, method=method, terms=terms, **extra)

    def values(self) -> List[int]:
        return [t.value for t in self.terms]

    def as_dict(self) -> Dict[int, int]:
        return {t.k: t.value for t in self.terms}

    @property
    def passed(self) -> bool:
        return not self.mismatches


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    KNOWN_OPEN = "known-open"


class CheckResult(BaseModel):
    name: str
    status: CheckStatus
    k_range: str
    detail: str = ""


class VerifyReport(BaseModel):
    k_max: int
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != CheckStatus.FAIL for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if c.status == CheckStatus.FAIL]


def compare_terms(expected: CountReport, actual: CountReport) -> List[Mismatch]:
    """Per-k differences over the k values both reports cover."""
    reference = expected.as_dict()
    mismatches = []
    for term in actual.terms:
        if term.k in reference and reference[term.k] != term.value:
            mismatches.append(Mismatch(
                k=term.k,
                method=actual.method,
                reference=expected.method,
                expected=reference[term.k],
                actual=term.value,
            ))
    return mismatches


def render_report(report: BaseModel, fmt: OutputFormat = OutputFormat.JSON, include_timing: bool = True) -> str:
    """
    Render a CountReport or VerifyReport.

    Args:
        report: the report model
        fmt: json, csv or plain
        include_timing: drop elapsed_ms when False so output is byte-stable

    Returns:
        The rendered text, newline terminated
    """
    fmt = OutputFormat(fmt)
    exclude = {"elapsed_ms"} if not include_timing and isinstance(report, CountReport) else None
    if fmt == OutputFormat.JSON:
        return json.dumps(report.model_dump(mode="json", exclude=exclude), indent=2) + "\n"

    if isinstance(report, VerifyReport):
        if fmt == OutputFormat.CSV:
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(["name", "status", "k_range", "detail"])
            for c in report.checks:
                writer.writerow([c.name, c.status.value, c.k_range, c.detail])
            return buffer.getvalue()
        lines = [f"{c.status.value:<10} {c.name} [{c.k_range}] {c.detail}".rstrip() for c in report.checks]
        lines.append("PASS" if report.passed else "FAIL")
        return "\n".join(lines) + "\n"

    if fmt == OutputFormat.CSV:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["k", "value"])
        for t in report.terms:
            writer.writerow([t.k, str(t.value)])
        return buffer.getvalue()

    lines = [f"# patterns {','.join(report.patterns)} method {report.method}"]
    lines.extend(f"{t.k} {t.value}" for t in report.terms)
    for m in report.mismatches:
        lines.append(f"! k={m.k} {m.method}={m.actual} {m.reference}={m.expected}")
    return "\n".join(lines) + "\n"
