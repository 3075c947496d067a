"""Serialize dashboards to the chart-IR JSON artifact and static HTML."""

from __future__ import annotations

import json
from importlib import resources

from . import __version__
from .data import AggregateResult, ColumnType, format_timestamp
from .layout import DashboardDoc
from .recommend import ChartSpec, Encoding
from .spec import spec_to_document

IR_VERSION = 1


def _number(value):
    """JSON-safe number: counts stay ints, floats normalize away -0.0."""
    if isinstance(value, bool):
        raise TypeError("bool is not a chart value")
    if isinstance(value, int):
        return value
    return 0.0 if value == 0 else float(value)


def _data_to_json(data: AggregateResult | None, temporal_fields: tuple[bool, ...]) -> dict:
    if data is None:
        return {"fields": [], "metrics": [], "rows": [], "droppedRows": 0, "droppedCategories": 0}
    rows = []
    for row in data.rows:
        out: list = []
        for i, key in enumerate(row.keys):
            out.append(format_timestamp(key) if temporal_fields[i] else key)
        out.extend(_number(v) for v in row.values)
        rows.append(out)
    payload: dict = {
        "fields": list(data.key_fields),
        "metrics": [m.label for m in data.metrics],
        "rows": rows,
        "droppedRows": data.dropped_rows,
        "droppedCategories": data.dropped_categories,
    }
    if data.time_unit is not None:
        payload["timeUnit"] = data.time_unit
    return payload


def _encoding_to_json(enc: Encoding) -> dict:
    out: dict = {"channel": enc.channel, "title": enc.title}
    if enc.field is not None:
        out["field"] = enc.field
        out["fieldType"] = enc.field_type.value
        if enc.time_unit is not None:
            out["timeUnit"] = enc.time_unit
    if enc.metrics:
        out["metrics"] = [m.label for m in enc.metrics]
    if enc.domain is not None:
        out["domain"] = [_number(enc.domain[0]), _number(enc.domain[1])]
    return out


def _chart_to_json(chart: ChartSpec, doc: DashboardDoc, index: int) -> dict:
    width, height = doc.chart_size(index)
    temporal_fields: tuple[bool, ...] = ()
    if chart.data is not None:
        types = {e.field: e.field_type for e in chart.encodings if e.field is not None}
        temporal_fields = tuple(
            types.get(name) is ColumnType.TEMPORAL for name in chart.data.key_fields
        )
    return {
        "mark": chart.mark.value,
        "title": chart.title,
        "section": chart.section_index,
        "row": chart.row_hint,
        "col": chart.col_hint,
        "width": width,
        "height": height,
        "editable": chart.editable,
        "encodings": [_encoding_to_json(e) for e in chart.encodings],
        "data": _data_to_json(chart.data, temporal_fields),
    }


def doc_to_ir(doc: DashboardDoc) -> dict:
    """The chart-IR document: layout, charts, inline data, and provenance."""
    return {
        "irVersion": IR_VERSION,
        "generator": f"quickdash {__version__}",
        "title": doc.title,
        "sections": [
            {
                "title": grid.title,
                "rows": grid.rows,
                "cols": grid.cols,
                "cells": [{"row": r, "col": c, "chart": i} for (r, c, i) in grid.cells],
            }
            for grid in doc.sections
        ],
        "charts": [_chart_to_json(chart, doc, i) for i, chart in enumerate(doc.charts)],
        "spec": spec_to_document(doc.spec),
    }


def emit_ir(doc: DashboardDoc) -> bytes:
    """Byte-deterministic IR: sorted keys, shortest round-trip floats, one
    trailing newline."""
    text = json.dumps(doc_to_ir(doc), sort_keys=True, indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


_PAGE = """<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<meta name="viewport" content="width=device-width, initial-scale=1">
<title>__TITLE__</title>
<style>
:root { color-scheme: light; }
body { margin: 0; background: #f4f5f7; color: #1f2430;
       font: 14px/1.45 system-ui, -apple-system, "Segoe UI", sans-serif; }
main { max-width: 1240px; margin: 0 auto; padding: 20px; }
h1 { font-size: 22px; margin: 8px 0 18px; }
section.dash-section { margin-bottom: 28px; }
section.dash-section > h2 { font-size: 15px; font-weight: 600; color: #444c5e;
                            margin: 0 0 10px; }
.dash-grid { display: grid; gap: 12px; }
.dash-cell { background: #fff; border: 1px solid #e1e4ea; border-radius: 8px;
             padding: 10px 12px; overflow: hidden; }
.chart-title { font-size: 13px; font-weight: 600; margin: 0 0 6px; color: #2b3245; }
.chart-note { font-size: 11px; color: #8a90a0; margin-top: 4px; }
.kpi-value { font-size: 30px; font-weight: 700; margin: 4px 0; }
.kpi-label { font-size: 12px; color: #667; }
.legend { display: flex; flex-wrap: wrap; gap: 10px; font-size: 11px;
          color: #555d70; margin-top: 6px; }
.legend span.swatch { display: inline-block; width: 10px; height: 10px;
                      border-radius: 2px; margin-right: 4px; }
svg text { fill: #667; font-size: 10px; }
svg .axis line, svg .axis path { stroke: #d4d8e0; }
</style>
</head>
<body>
<main id="dashboard"></main>
<script id="dashboard-ir" type="application/json">__IR__</script>
<script>
__RENDERER__
</script>
</body>
</html>
"""


def _renderer_js() -> str:
    return resources.files("quickdash").joinpath("render.js").read_text(encoding="utf-8")


def emit_html(doc: DashboardDoc) -> str:
    """Self-contained static page: the IR plus an embedded chart renderer."""
    ir_text = emit_ir(doc).decode("utf-8").rstrip("\n")
    # keep the inline JSON from terminating the script element early
    ir_text = ir_text.replace("</", "<\\/")
    page = _PAGE.replace("__TITLE__", _escape_html(doc.title))
    page = page.replace("__IR__", ir_text)
    return page.replace("__RENDERER__", _renderer_js())


def _escape_html(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )
