"""Machine-readable evaluation reports.

The JSON and CSV emitters are deliberately hand-rolled: key order is fixed
(metrics sorted by canonical name, classes ascending), floats are printed
with 17 significant digits so parsing the report reproduces the exact
float64 bit patterns, and no timestamps enter the payload. Identical
inputs therefore serialize to identical bytes.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .evaluator import EvaluationResult


@dataclass(frozen=True)
class MetricTiming:
    result: EvaluationResult
    millis: float


@dataclass(frozen=True)
class ReportDocument:
    tool_name: str
    tool_version: str
    truth_path: str
    pred_path: str
    shape: tuple[int, ...]
    mode: str
    policy: str
    spacing: tuple[float, ...]
    include_background: bool
    hd_algo: str
    classes: tuple[int, ...]
    metrics: Mapping[str, MetricTiming]  # keyed by canonical name
    with_timings: bool


def _fnum(value: float) -> str:
    """17-significant-digit decimal; round-trips to the same float64."""
    if value != value:  # NaN never reaches serialization; guard anyway
        return "null"
    return format(float(value), ".17g")


def _jstr(value: str) -> str:
    out = ['"']
    for ch in value:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


class _JsonWriter:
    def __init__(self) -> None:
        self.parts: list[str] = []
        self.depth = 0

    def line(self, text: str) -> None:
        self.parts.append("  " * self.depth + text)

    def render(self) -> str:
        return "\n".join(self.parts) + "\n"


def _entry_rows(timing: MetricTiming) -> list[tuple[str, str, str, str]]:
    """(scope, value, defined, reason) rows for one metric, fixed order."""
    rows = []
    result = timing.result
    for cls in sorted(result.per_class):
        score = result.per_class[cls]
        value = "" if math.isnan(score.value) else _fnum(score.value)
        rows.append(
            (
                str(cls),
                value,
                "true" if score.defined else "false",
                score.reason or "",
            )
        )
    if result.overall is not None:
        score = result.overall
        value = "" if math.isnan(score.value) else _fnum(score.value)
        rows.append(
            ("all", value, "true" if score.defined else "false", score.reason or "")
        )
    rows.append(("macro", "" if result.macro is None else _fnum(result.macro), "", ""))
    rows.append(
        ("weighted", "" if result.weighted is None else _fnum(result.weighted), "", "")
    )
    return rows


def render_json(doc: ReportDocument) -> str:
    w = _JsonWriter()
    w.line("{")
    w.depth += 1
    w.line(
        f'"tool": {{"name": {_jstr(doc.tool_name)}, '
        f'"version": {_jstr(doc.tool_version)}}},'
    )
    w.line(f'"truth": {_jstr(doc.truth_path)},')
    w.line(f'"pred": {_jstr(doc.pred_path)},')
    w.line(f'"shape": [{", ".join(str(s) for s in doc.shape)}],')
    w.line(f'"mode": {_jstr(doc.mode)},')
    w.line(f'"policy": {_jstr(doc.policy)},')
    w.line(f'"spacing": [{", ".join(_fnum(s) for s in doc.spacing)}],')
    w.line(f'"include_background": {"true" if doc.include_background else "false"},')
    w.line(f'"hd_algo": {_jstr(doc.hd_algo)},')
    w.line(f'"classes": [{", ".join(str(c) for c in doc.classes)}],')
    w.line('"metrics": {')
    w.depth += 1
    names = sorted(doc.metrics)
    for mi, name in enumerate(names):
        timing = doc.metrics[name]
        result = timing.result
        w.line(f"{_jstr(name)}: {{")
        w.depth += 1
        per_class = []
        undefined = []
        for cls in sorted(result.per_class):
            score = result.per_class[cls]
            value = "null" if math.isnan(score.value) else _fnum(score.value)
            per_class.append(f'"{cls}": {value}')
            if not score.defined:
                undefined.append(f'"{cls}": {_jstr(score.reason or "undefined")}')
        w.line(f'"per_class": {{{", ".join(per_class)}}},')
        if result.overall is not None:
            score = result.overall
            value = "null" if math.isnan(score.value) else _fnum(score.value)
            w.line(f'"all": {value},')
            if not score.defined:
                undefined.append(f'"all": {_jstr(score.reason or "undefined")}')
        w.line(f'"undefined": {{{", ".join(undefined)}}},')
        macro = "null" if result.macro is None else _fnum(result.macro)
        weighted = "null" if result.weighted is None else _fnum(result.weighted)
        if doc.with_timings:
            w.line(f'"macro": {macro},')
            w.line(f'"weighted": {weighted},')
            w.line(f'"time_ms": {format(timing.millis, ".3f")}')
        else:
            w.line(f'"macro": {macro},')
            w.line(f'"weighted": {weighted}')
        w.depth -= 1
        w.line("}," if mi < len(names) - 1 else "}")
    w.depth -= 1
    w.line("}")
    w.depth -= 1
    w.line("}")
    return w.render()


def render_csv(doc: ReportDocument) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["metric", "scope", "value", "defined", "reason"])
    for name in sorted(doc.metrics):
        for scope, value, defined, reason in _entry_rows(doc.metrics[name]):
            writer.writerow([name, scope, value, defined, reason])
    return buf.getvalue()


def render(doc: ReportDocument, fmt: str) -> str:
    if fmt == "json":
        return render_json(doc)
    if fmt == "csv":
        return render_csv(doc)
    raise ValueError(f"unknown report format: {fmt!r}")
