"""Text and structured (JSON) rendering of condition and sweep reports.

Structured output is byte-deterministic: keys keep a fixed order, floats go
through ``repr`` and wall-clock timings are left out.
"""
from __future__ import annotations

import json
from typing import Any, Optional, Union

from .conditions import ConditionReport
from .graph import vertex_label
from .sweep import SweepReport

FORMATS = ("text", "structured")


def _pair_labels(pair: Optional[tuple[int, int]]) -> Optional[list[str]]:
    if pair is None:
        return None
    return [vertex_label("x", pair[0]), vertex_label("y", pair[1])]


def condition_document(report: ConditionReport) -> dict[str, Any]:
    return {
        "graph": {
            "n": report.n,
            "e": report.e,
            "delta": report.delta,
            "sigma": report.sigma,
            "degree_sequence": list(report.degree_sequence),
        },
        "verdicts": [
            {
                "id": v.condition_id.value,
                "applicable": v.applicable,
                "satisfied": v.satisfied,
                "certified": v.certified,
                "confidence": v.confidence.value,
                "detail": v.detail,
            }
            for v in report.verdicts
        ],
        "oracle": {
            "weakly_hc": report.oracle_verdict,
            "failing_pair": _pair_labels(report.failing_pair),
        },
        "certified_by": [cid.value for cid in report.certified_by],
        "violation": report.violation,
    }


def sweep_document(report: SweepReport) -> dict[str, Any]:
    return {
        "sweep": {
            "condition": report.condition,
            "n": report.n,
            "mode": report.mode,
            "samples": report.samples,
            "seed": report.seed,
            "filter": report.filter,
            "generator": "numpy.random.default_rng (PCG64)" if report.mode == "random" else None,
        },
        "examined": report.examined,
        "certificates": dict(report.certificates),
        "oracle_calls": report.oracle_calls,
        "violations": list(report.violations),
        "sandwich": {"checked": report.sandwich_checked, "discrepancies": list(report.sandwich_discrepancies)},
        "containment": {"checked": report.containment_checked,
                        "discrepancies": list(report.containment_discrepancies)},
        "ok": report.ok,
    }


def to_json(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=False, ensure_ascii=True) + "\n"


def _table(rows: list[tuple[str, ...]]) -> list[str]:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]


def _yn(flag: Optional[bool]) -> str:
    return "-" if flag is None else ("yes" if flag else "no")


def _condition_text(report: ConditionReport) -> str:
    lines = [
        f"n = {report.n}   e = {report.e}   delta = {report.delta}   sigma = {report.sigma if report.sigma is not None else '-'}",
        "degree sequence: " + " ".join(map(str, report.degree_sequence)),
        "",
    ]
    rows = [("condition", "applicable", "satisfied", "certified", "confidence", "detail")]
    rows += [(v.condition_id.value, _yn(v.applicable), _yn(v.satisfied), _yn(v.certified), v.confidence.value, v.detail)
             for v in report.verdicts]
    lines += _table(rows)
    lines.append("")
    if report.oracle_verdict is None:
        lines.append("oracle: not run")
    elif report.oracle_verdict:
        lines.append("oracle: weakly Hamilton-connected")
    else:
        x, y = _pair_labels(report.failing_pair)
        lines.append(f"oracle: NOT weakly Hamilton-connected (no Hamilton path {x} .. {y})")
    if report.violation:
        lines.append("SOUNDNESS VIOLATION: certified by " + ", ".join(c.value for c in report.certified_by))
    return "\n".join(lines) + "\n"


def _sweep_text(report: SweepReport) -> str:
    mode = report.mode if report.mode == "exhaustive" else f"random samples={report.samples} seed={report.seed}"
    lines = [f"sweep: condition={report.condition} n={report.n} {mode}"
             + (f" filter={report.filter}" if report.filter else ""),
             f"graphs examined: {report.examined}   oracle calls: {report.oracle_calls}"]
    if report.certificates:
        lines.append("")
        lines += _table([("condition", "certificates")] + [(k, str(v)) for k, v in report.certificates.items()])
    lines.append("")
    lines.append(f"violations: {len(report.violations)}")
    if report.condition == "sandwich":
        lines.append(f"sandwich: checked {report.sandwich_checked}, discrepancies {len(report.sandwich_discrepancies)}")
    lines.append(f"containment: checked {report.containment_checked}, "
                 f"discrepancies {len(report.containment_discrepancies)}")
    for label, items in (("violation", report.violations), ("sandwich discrepancy", report.sandwich_discrepancies),
                         ("containment discrepancy", report.containment_discrepancies)):
        for item in items:
            extra = {k: v for k, v in item.items() if k != "graph"}
            lines.append(f"-- {label} {json.dumps(extra)}")
            lines.append(item["graph"].rstrip("\n"))
    lines.append("OK" if report.ok else "FAILED")
    return "\n".join(lines) + "\n"


def emit_report(report: Union[ConditionReport, SweepReport], format: str = "text") -> str:
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    if isinstance(report, ConditionReport):
        return to_json(condition_document(report)) if format == "structured" else _condition_text(report)
    if isinstance(report, SweepReport):
        return to_json(sweep_document(report)) if format == "structured" else _sweep_text(report)
    raise TypeError(f"cannot render {type(report).__name__}")
