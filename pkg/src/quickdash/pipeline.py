"""End-to-end compilation and the data-free preview skeleton."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .data import DataTable, TableSchema, load_csv
from .emit import emit_html, emit_ir
from .expand import aggregate_intent, expand, resolve_scales_from_results
from .layout import DashboardDoc, LayoutConfig, grid_shape, layout, section_title
from .model import DashboardSpec, Issue, ValidationReport
from .recommend import recommend, select_mark
from .spec import ParseError, parse_spec, parse_spec_document, validate_spec


class ValidationFailure(Exception):
    """Compilation refused because the spec does not fit the table schema."""

    def __init__(self, report: ValidationReport):
        super().__init__(f"{len(report.errors)} validation error(s)")
        self.report = report


OUTPUT_FORMATS = ("ir", "html", "both")


@dataclass(frozen=True)
class CompileRequest:
    """One compile call: a spec document, a data reference, and output kinds."""

    spec_text: str
    data_path: Path
    output: str = "ir"

    def __post_init__(self) -> None:
        if self.output not in OUTPUT_FORMATS:
            raise ValueError(f"output must be one of {OUTPUT_FORMATS}")


@dataclass(frozen=True)
class CompileResult:
    doc: DashboardDoc
    ir: bytes | None
    html: str | None


def build_doc(
    spec: DashboardSpec, table: DataTable, config: LayoutConfig | None = None
) -> DashboardDoc:
    """Validate, expand, aggregate, resolve scales, recommend, and lay out.

    Raises ValidationFailure carrying the full report when the spec does not
    bind to the table schema.
    """
    normalized, report = validate_spec(spec, table.schema)
    if not report.ok:
        raise ValidationFailure(report)
    intents = expand(normalized)
    results = [aggregate_intent(table, intent) for intent in intents]
    scales = resolve_scales_from_results(zip(intents, results))
    charts = [
        recommend(intent, table.schema, scales, data=result)
        for intent, result in zip(intents, results)
    ]
    return layout(charts, normalized, config)


def compile_text(
    spec_text: str, table: DataTable, config: LayoutConfig | None = None
) -> DashboardDoc:
    return build_doc(parse_spec(spec_text), table, config)


def compile_request(request: CompileRequest, config: LayoutConfig | None = None) -> CompileResult:
    table = load_csv(request.data_path)
    doc = compile_text(request.spec_text, table, config)
    ir = emit_ir(doc) if request.output in ("ir", "both") else None
    html = emit_html(doc) if request.output in ("html", "both") else None
    return CompileResult(doc=doc, ir=ir, html=html)


# ---------------------------------------------------------------------------
# Preview skeleton: counts, grid shapes, and predicted marks without any
# data scan, cheap enough to recompute per keystroke.


@dataclass(frozen=True)
class PreviewCell:
    row: int
    col: int
    metrics: tuple[str, ...]
    group: tuple[str, ...]
    mark: str

    def to_dict(self) -> dict:
        return {
            "row": self.row,
            "col": self.col,
            "metrics": list(self.metrics),
            "group": list(self.group),
            "mark": self.mark,
        }


@dataclass(frozen=True)
class PreviewSection:
    index: int
    title: str
    rows: int
    cols: int
    cells: tuple[PreviewCell, ...]
    errors: tuple[Issue, ...] = ()

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "title": self.title,
            "rows": self.rows,
            "cols": self.cols,
            "chartCount": len(self.cells),
            "cells": [c.to_dict() for c in self.cells],
            "errors": [e.to_dict() for e in self.errors],
        }


@dataclass(frozen=True)
class PreviewSkeleton:
    sections: tuple[PreviewSection, ...]
    errors: tuple[dict, ...] = ()
    warnings: tuple[dict, ...] = ()

    @property
    def chart_count(self) -> int:
        return sum(len(s.cells) for s in self.sections)

    def to_dict(self) -> dict:
        return {
            "sections": [s.to_dict() for s in self.sections],
            "chartCount": self.chart_count,
            "errors": list(self.errors),
            "warnings": list(self.warnings),
        }


def preview(spec: DashboardSpec, schema: TableSchema) -> PreviewSkeleton:
    """Predict the compiled dashboard's shape from the spec and schema alone.

    Sections with validation errors come back annotated and cell-free; valid
    sections carry their full grid with predicted marks. The counts and grid
    shapes agree exactly with what compilation would produce.
    """
    normalized, report = validate_spec(spec, schema)
    intents = expand(normalized)
    sections = []
    for i, section in enumerate(normalized.sections):
        prefix = f"Sections[{i}]"
        errors = tuple(
            e for e in report.errors if e.path == prefix or e.path.startswith(prefix + ".")
        )
        title = section_title(section)
        if errors:
            sections.append(PreviewSection(i, title, 0, 0, (), errors))
            continue
        own = [intent for intent in intents if intent.section_index == i]
        rows, cols = grid_shape((it.row_hint, it.col_hint) for it in own)
        cells = tuple(
            PreviewCell(
                row=it.row_hint,
                col=it.col_hint,
                metrics=tuple(m.label for m in it.metrics),
                group=it.group.fields if it.group is not None else (),
                mark=select_mark(len(it.metrics), it.group, schema)[0].value,
            )
            for it in own
        )
        sections.append(PreviewSection(i, title, rows, cols, cells))
    return PreviewSkeleton(
        sections=tuple(sections),
        warnings=tuple(w.to_dict() for w in report.warnings),
    )


def preview_document(doc, schema: TableSchema) -> PreviewSkeleton:
    """Preview an untrusted decoded document; parse failures become a
    zero-section skeleton with the error attached."""
    try:
        spec = parse_spec_document(doc)
    except ParseError as exc:
        return PreviewSkeleton(sections=(), errors=(exc.to_dict(),))
    return preview(spec, schema)


def preview_text(text: str, schema: TableSchema) -> PreviewSkeleton:
    try:
        spec = parse_spec(text)
    except ParseError as exc:
        return PreviewSkeleton(sections=(), errors=(exc.to_dict(),))
    return preview(spec, schema)
