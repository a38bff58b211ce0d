"""Deterministic JSON reports.

All dictionary keys are serialized sorted; tuple keys are joined with
commas; rationals render as "p/q".  Timing data lives in a dedicated
"timings" field which is excluded from the report digest, so repeated runs
on the same input agree byte-for-byte everywhere else.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from . import __version__

SCHEMA = 1


def _plain(value):
    """Recursively convert to JSON-serializable data with string keys."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {
            _key(k): _plain(v) for k, v in sorted(value.items(), key=lambda kv: _key(kv[0]))
        }
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


def _key(k) -> str:
    if isinstance(k, tuple):
        return ",".join(
            f"({_key(p)})" if isinstance(p, tuple) else str(p) for p in k
        )
    return str(k)


def input_digest(document: str) -> str:
    return hashlib.sha256(document.encode()).hexdigest()


def build_report(
    command: str,
    document: str,
    body: dict,
    ok: bool,
    exit_code: int,
    timings: dict | None = None,
) -> dict:
    report = {
        "schema": SCHEMA,
        "tool": f"standext {__version__}",
        "command": command,
        "input_sha256": input_digest(document),
        "ok": ok,
        "exit_code": exit_code,
    }
    report.update(_plain(body))
    payload = json.dumps(report, sort_keys=True, separators=(",", ":"))
    report["report_digest"] = hashlib.sha256(payload.encode()).hexdigest()
    if timings is not None:
        report["timings"] = {k: round(v, 6) for k, v in sorted(timings.items())}
    return report


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
