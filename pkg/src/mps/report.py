"""Canonical text and JSON rendering of verification reports."""

from __future__ import annotations

import json
from typing import Iterable

from .catalog import FAIL, HYPOTHESIS_VIOLATED, PASS, SKIPPED, VerificationReport, canonical


def _compact(value) -> str:
    return json.dumps(value, sort_keys=True, separators=(", ", ": "))


def summary(reports: Iterable[VerificationReport]) -> dict:
    counts = {PASS: 0, FAIL: 0, HYPOTHESIS_VIOLATED: 0, SKIPPED: 0}
    errors = 0
    for r in reports:
        errors += bool(r.error)
        for c in r.checks:
            counts[c.status] = counts.get(c.status, 0) + 1
    return {"checks": counts, "entry_errors": errors}


def emit_report(reports: list[VerificationReport], fmt: str = "text", timings: bool = False) -> bytes:
    """Byte-stable for a fixed seed: entries sorted by name, keys sorted,
    wall time included only on request."""
    reports = sorted(reports, key=lambda r: r.entry)
    if fmt == "json":
        doc = {"reports": [r.to_dict(timings) for r in reports], "summary": summary(reports)}
        return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt}")
    lines = []
    for r in reports:
        head = f"== {r.entry} ({r.kind})"
        if timings:
            head += f" {r.seconds:.3f}s"
        lines.append(head)
        if r.error:
            lines.append(f"  ERROR {r.error}")
        for c in r.checks:
            lines.append(f"  {c.status:<19} {c.check}")
            if c.status != PASS:
                lines.append(f"      expected: {_compact(c.expected)}")
                lines.append(f"      computed: {_compact(c.computed)}")
                if c.note:
                    lines.append(f"      note: {c.note}")
    s = summary(reports)
    counts = s["checks"]
    lines.append(
        f"summary: {counts[PASS]} pass, {counts[FAIL]} fail, {counts[HYPOTHESIS_VIOLATED]} hypothesis-violated, "
        f"{counts[SKIPPED]} skipped, {s['entry_errors']} entry errors"
    )
    return ("\n".join(lines) + "\n").encode()


def emit_mapping(data: dict, fmt: str = "text") -> bytes:
    """Render a single command result (a flat or nested mapping)."""
    data = canonical(data)
    if fmt == "json":
        return (json.dumps(data, sort_keys=True, indent=2) + "\n").encode()
    lines = []
    for k in sorted(data):
        v = data[k]
        lines.append(f"{k}: {v if isinstance(v, str) else _compact(v)}")
    return ("\n".join(lines) + "\n").encode()
