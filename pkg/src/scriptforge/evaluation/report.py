"""Per-script characteristics report and its fixed-shape table rendering."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from scriptforge.evaluation import RankedRecord, mrr, top_k_accuracy
from scriptforge.model import Script


@dataclass(frozen=True)
class ScriptReport:
    script_id: str
    code: str
    name: str
    event_count: int
    top1: float | None
    top3: float | None
    top5: float | None
    mrr_at_3: float | None
    variable_count: int
    participation_count: int
    linked_variable_count: int
    suggestions_accepted: int
    suggestions_offered: int
    has_unordered_pairs: bool
    self_reported_time: str | None

    def to_dict(self) -> dict[str, Any]:
        return {
            "script_id": self.script_id,
            "code": self.code,
            "name": self.name,
            "event_count": self.event_count,
            "top1": self.top1,
            "top3": self.top3,
            "top5": self.top5,
            "mrr_at_3": self.mrr_at_3,
            "variable_count": self.variable_count,
            "participation_count": self.participation_count,
            "linked_variable_count": self.linked_variable_count,
            "suggestions_accepted": self.suggestions_accepted,
            "suggestions_offered": self.suggestions_offered,
            "has_unordered_pairs": self.has_unordered_pairs,
            "self_reported_time": self.self_reported_time,
        }


def script_report(
    script: Script,
    records: Sequence[RankedRecord],
    post_curation_log: Sequence[Mapping] = (),
    code: str | None = None,
    self_reported_time: str | None = None,
) -> ScriptReport:
    """Assemble every per-script metric; ranking metrics are None (shown
    as '-') when the script has no recorded type choices."""
    if records:
        top1 = top_k_accuracy(records, 1)
        top3 = top_k_accuracy(records, 3)
        top5 = top_k_accuracy(records, 5)
        mrr3 = mrr(records, 3)
    else:
        top1 = top3 = top5 = mrr3 = None
    accepted = sum(1 for e in post_curation_log if e.get("decision") == "accepted")
    return ScriptReport(
        script_id=script.id,
        code=code or script.id,
        name=script.name,
        event_count=len(script.events),
        top1=top1,
        top3=top3,
        top5=top5,
        mrr_at_3=mrr3,
        variable_count=len(script.variables),
        participation_count=sum(len(v.participations) for v in script.variables),
        linked_variable_count=sum(1 for v in script.variables if v.kb_link),
        suggestions_accepted=accepted,
        suggestions_offered=len(post_curation_log),
        has_unordered_pairs=bool(script.unordered_pairs()),
        self_reported_time=self_reported_time,
    )


def _pct(value: float | None) -> str:
    if value is None:
        return "-"
    return str(int(value * 100 + 0.5))  # display-only rounding, half up


_ROWS = (
    "# events in initial script",
    "type accuracy at top-1, 3, 5 (%)",
    "# variables, participations, linked",
    "# suggestions accepted and offered",
    "non-linear path",
    "self-reported time",
)


def render_report_table(reports: Sequence[ScriptReport]) -> str:
    """Fixed six-row table, one column per script."""
    columns = []
    for r in reports:
        columns.append(
            [
                r.code,
                str(r.event_count),
                f"{_pct(r.top1)} {_pct(r.top3)} {_pct(r.top5)}",
                f"{r.variable_count} {r.participation_count} {r.linked_variable_count}",
                f"{r.suggestions_accepted} {r.suggestions_offered}",
                "Y" if r.has_unordered_pairs else "N",
                r.self_reported_time or "-",
            ]
        )
    label_width = max(len(label) for label in _ROWS) + 4
    widths = [max(len(cell) for cell in col) for col in columns]

    lines = []
    header = " " * label_width + "  ".join(
        col[0].rjust(widths[i]) for i, col in enumerate(columns)
    )
    lines.append(header.rstrip())
    for row_idx, label in enumerate(_ROWS, start=1):
        left = f"{row_idx}  {label}".ljust(label_width)
        cells = "  ".join(col[row_idx].rjust(widths[i]) for i, col in enumerate(columns))
        lines.append((left + cells).rstrip())
    return "\n".join(lines) + "\n"
