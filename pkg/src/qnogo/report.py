"""Pass/fail reporting shared by the proof runners and the search engine."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class CheckResult:
    """One named numeric check.

    ``measured`` and ``expected`` are a float or an equal-length tuple of
    floats; ``passed`` holds exactly when they agree componentwise within
    ``tolerance``.  Build through :func:`make_check` so that equivalence
    stays true by construction.
    """

    name: str
    passed: bool
    measured: float | tuple[float, ...]
    expected: float | tuple[float, ...]
    tolerance: float


@dataclass(frozen=True)
class VerificationReport:
    """Ordered checks for one argument; ``overall`` is their conjunction."""

    proof_id: str
    checks: tuple[CheckResult, ...]
    overall: bool


def _coerce(value) -> float | tuple[float, ...]:
    if isinstance(value, (int, float)):
        return float(value)
    return tuple(float(x) for x in value)


def make_check(name: str, measured, expected, tolerance: float) -> CheckResult:
    m = _coerce(measured)
    e = _coerce(expected)
    if isinstance(m, float) != isinstance(e, float):
        raise ValueError("measured and expected must have matching shape")
    if isinstance(m, float):
        passed = abs(m - e) <= tolerance
    else:
        if len(m) != len(e):
            raise ValueError("measured and expected must have matching length")
        passed = all(abs(a - b) <= tolerance for a, b in zip(m, e))
    return CheckResult(name=name, passed=bool(passed), measured=m, expected=e, tolerance=float(tolerance))


def make_report(proof_id: str, checks: Sequence[CheckResult]) -> VerificationReport:
    checks = tuple(checks)
    return VerificationReport(proof_id=proof_id, checks=checks, overall=all(c.passed for c in checks))


def check_to_dict(check: CheckResult) -> dict:
    def plain(v):
        return list(v) if isinstance(v, tuple) else v

    return {
        "name": check.name,
        "passed": check.passed,
        "measured": plain(check.measured),
        "expected": plain(check.expected),
        "tolerance": check.tolerance,
    }


def report_to_dict(report: VerificationReport) -> dict:
    return {
        "proof_id": report.proof_id,
        "checks": [check_to_dict(c) for c in report.checks],
        "overall": report.overall,
    }


def _fmt_value(v) -> str:
    if isinstance(v, tuple):
        return "(" + ", ".join(f"{x:.12g}" for x in v) + ")"
    return f"{v:.12g}"


def report_to_text(report: VerificationReport) -> str:
    lines = [f"== {report.proof_id} =="]
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        lines.append(
            f"[{status}] {c.name}: measured={_fmt_value(c.measured)} "
            f"expected={_fmt_value(c.expected)} tol={c.tolerance:g}"
        )
    lines.append(f"overall: {'PASS' if report.overall else 'FAIL'}")
    return "\n".join(lines)
