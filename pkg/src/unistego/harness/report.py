"""Plain-text result tables: schemes down, models across, one response per cell."""

from __future__ import annotations

from ..core import DISPLAY_NAMES, SchemeId
from .runner import ORIGINAL, AccuracyMatrices, ProbeRecord, aggregate

CELL_WIDTH = 24


def _scheme_label(scheme: str) -> str:
    if scheme == ORIGINAL:
        return "Original"
    try:
        return DISPLAY_NAMES[SchemeId(scheme)]
    except ValueError:
        return scheme


def _cell(record: ProbeRecord | None) -> str:
    if record is None:
        return ""
    if record.classification == "skipped":
        return "(skipped)"
    text = " ".join(record.response.split())
    if len(text) > CELL_WIDTH:
        text = text[:CELL_WIDTH - 3] + "..."
    return text


def _grid(header: list[str], rows: list[list[str]]) -> list[str]:
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    fmt = lambda row: " | ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip()
    rule = "-+-".join("-" * w for w in widths)
    return [fmt(header), rule] + [fmt(r) for r in rows]


def render_table(records: list[ProbeRecord], matrices: AccuracyMatrices | None = None) -> str:
    """Responses grid followed by per-model label counts."""
    matrices = matrices or aggregate(records)
    if matrices.experiment is None:
        return "(no records)\n"
    cells = {(r.model, r.scheme): r for r in records}
    header = [""] + matrices.models
    rows = [
        [_scheme_label(s)] + [_cell(cells.get((m, s))) for m in matrices.models]
        for s in matrices.schemes
    ]
    lines = [f"Experiment {matrices.experiment.number} ({matrices.experiment.value})", ""]
    lines += _grid(header, rows)
    lines.append("")
    by_model = matrices.by_model()
    count_rows = [[label] + [str(by_model[m][label]) for m in matrices.models] for label in matrices.labels]
    lines += _grid(["label"] + matrices.models, count_rows)
    return "\n".join(lines) + "\n"
