"""Check results and deterministic report serialization."""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from typing import Iterable

__version__ = "0.1.0"


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    description: str
    residual: float | None
    threshold: float
    passed: bool
    value: complex | None = None

    def __bool__(self):
        return self.passed


def check(check_id, description, residual, threshold, value=None) -> CheckResult:
    residual = float(residual)
    return CheckResult(check_id, description, residual, threshold, residual < threshold, value)


def predicate(check_id, description, ok, threshold=0.0, value=None) -> CheckResult:
    return CheckResult(check_id, description, None, threshold, bool(ok), value)


def all_passed(results: Iterable[CheckResult]) -> bool:
    return all(r.passed for r in results)


def by_id(results: Iterable[CheckResult]) -> dict[str, CheckResult]:
    return {r.check_id: r for r in results}


def input_digest(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return "sha256:" + hashlib.sha256(blob).hexdigest()


def _fmt_real(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return json.dumps(str(x))
    return format(x, ".17g")


def _fmt_value(z: complex) -> str:
    if z.imag == 0:
        return format(z.real, "g") if z.real == int(z.real) else f"{z.real:+.12f}"
    return f"{z.real:+.12f}{z.imag:+.12f}i"


def _dump(obj, indent: int) -> str:
    pad = "  " * (indent + 1)
    end = "  " * indent
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_real(obj)
    if isinstance(obj, complex):
        return f"[{_fmt_real(obj.real)}, {_fmt_real(obj.imag)}]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_dump(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _dump(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):
        return _dump(obj.item(), indent)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def build_report(command: str, inputs, tol: float, seed: int, results: list[CheckResult]) -> dict:
    results = sorted(results, key=lambda r: r.check_id)
    checks = []
    for r in results:
        checks.append({
            "check_id": r.check_id,
            "description": r.description,
            "residual": r.residual,
            "threshold": r.threshold,
            "value": None if r.value is None else complex(r.value),
            "pass": r.passed,
        })
    npass = sum(r.passed for r in results)
    return {
        "tool": "qgframe",
        "version": __version__,
        "command": command,
        "input_digest": input_digest(inputs),
        "tolerance": float(tol),
        "seed": int(seed),
        "checks": checks,
        "summary": {"total": len(results), "passed": npass, "failed": len(results) - npass},
    }


def to_json(report: dict) -> str:
    return _dump(report, 0) + "\n"


def to_text(report: dict) -> str:
    lines = [f"qgframe {report['version']} {report['command']}  tol={_fmt_real(report['tolerance'])}"]
    for c in report["checks"]:
        mark = "PASS" if c["pass"] else "FAIL"
        res = "-" if c["residual"] is None else f"{c['residual']:.3e}"
        val = "" if c["value"] is None else f"  value={_fmt_value(c['value'])}"
        lines.append(f"{mark}  {c['check_id']:<40} residual={res}{val}  {c['description']}")
    s = report["summary"]
    lines.append(f"{s['passed']}/{s['total']} passed")
    return "\n".join(lines) + "\n"
