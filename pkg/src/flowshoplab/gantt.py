"""Gantt documents for fiducial schedules (JSON, SVG or plain text)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .core import ProcessingTimeTable, Schedule, _as_table, makespan, normalize, validate

__all__ = ["Bar", "GanttDocument", "InfeasibleScheduleError", "gantt_document", "render_gantt"]


class InfeasibleScheduleError(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        first = self.violations[0]
        more = f" (+{len(self.violations) - 1} more)" if len(self.violations) > 1 else ""
        super().__init__(
            f"infeasible schedule: {first.invariant} at machine {first.machine}, job {first.job}: {first.detail}{more}"
        )


@dataclass(frozen=True)
class Bar:
    job: int
    start: float
    end: float


@dataclass(frozen=True)
class GanttDocument:
    fiducial: int
    makespan: float
    machines: tuple[tuple[Bar, ...], ...]

    def to_dict(self) -> dict:
        return {
            "fiducial": self.fiducial,
            "makespan": _num(self.makespan),
            "machines": [
                {
                    "machine": m + 1,
                    "bars": [{"job": b.job, "start": _num(b.start), "end": _num(b.end)} for b in bars],
                }
                for m, bars in enumerate(self.machines)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "GanttDocument":
        machines = sorted(data["machines"], key=lambda m: m["machine"])
        return cls(
            fiducial=int(data["fiducial"]),
            makespan=float(data["makespan"]),
            machines=tuple(
                tuple(Bar(int(b["job"]), float(b["start"]), float(b["end"])) for b in m["bars"]) for m in machines
            ),
        )


def _num(v: float):
    v = float(v)
    return int(v) if v.is_integer() else v


def gantt_document(schedule: Schedule, table: ProcessingTimeTable) -> GanttDocument:
    """Normalized bars (earliest start at 0) for a feasible schedule."""
    table = _as_table(table)
    problems = validate(schedule, table)
    if problems:
        raise InfeasibleScheduleError(problems)
    sch = normalize(schedule)
    M, N = sch.shape
    return GanttDocument(
        fiducial=sch.fiducial,
        makespan=makespan(sch),
        machines=tuple(
            tuple(Bar(i + 1, float(sch.starts[m, i]), float(sch.ends[m, i])) for i in range(N)) for m in range(M)
        ),
    )


def _svg(doc: GanttDocument, px_per_unit: float = 12.0, row_height: int = 24) -> str:
    label_w, pad = 40, 10
    span = max(doc.makespan, 1e-12)
    width = label_w + pad * 2 + span * px_per_unit
    height = pad * 2 + row_height * len(doc.machines) + 20
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1f}" height="{height}" '
        f'font-family="monospace" font-size="10">'
    ]
    for m, bars in enumerate(doc.machines):
        y = pad + m * row_height
        weight = ' font-weight="bold"' if m + 1 == doc.fiducial else ""
        out.append(f'<text x="{pad}" y="{y + row_height * 0.65:.1f}"{weight}>M{m + 1}</text>')
        for b in bars:
            x = label_w + pad + b.start * px_per_unit
            w = (b.end - b.start) * px_per_unit
            if w <= 0:
                continue
            hue = (b.job * 47) % 360
            out.append(
                f'<rect x="{x:.2f}" y="{y + 2}" width="{w:.2f}" height="{row_height - 4}" '
                f'fill="hsl({hue},60%,75%)" stroke="black" stroke-width="0.5">'
                f"<title>{escape(f'M{m + 1} J{b.job}: {b.start:g}-{b.end:g}')}</title></rect>"
            )
            out.append(f'<text x="{x + w / 2:.2f}" y="{y + row_height * 0.65:.1f}" text-anchor="middle">{b.job}</text>')
    axis_y = pad + row_height * len(doc.machines) + 12
    out.append(f'<text x="{label_w + pad}" y="{axis_y}">0</text>')
    out.append(f'<text x="{label_w + pad + span * px_per_unit:.2f}" y="{axis_y}" text-anchor="end">{doc.makespan:g}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _text(doc: GanttDocument, width: int = 80) -> str:
    span = doc.makespan if doc.makespan > 0 else 1.0
    unit = max(1.0, span / width)
    cols = int(round(span / unit))
    lines = [f"fiducial M{doc.fiducial}  makespan {doc.makespan:g}  (1 char = {unit:g} time units)"]
    for m, bars in enumerate(doc.machines):
        row = [" "] * cols
        for b in bars:
            a, z = int(round(b.start / unit)), int(round(b.end / unit))
            glyph = str(b.job % 10)
            for c in range(a, min(z, cols)):
                row[c] = glyph
        mark = "*" if m + 1 == doc.fiducial else " "
        lines.append(f"M{m + 1:<3}{mark}|{''.join(row)}|")
    return "\n".join(lines) + "\n"


def render_gantt(schedule: Schedule, table: ProcessingTimeTable, format: str = "json") -> str:
    """Serialize the Gantt chart of ``schedule`` as ``json``, ``svg`` or ``text``.

    One row per machine with machine 1 on top, time running left to right.
    Only the JSON form is exact; the other two are for looking at.
    """
    doc = gantt_document(schedule, table)
    if format == "json":
        return doc.to_json() + "\n"
    if format == "svg":
        return _svg(doc)
    if format == "text":
        return _text(doc)
    raise ValueError(f"unknown format {format!r}; expected json, svg or text")
