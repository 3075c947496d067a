"""quickdash: compile data-first dashboard specs into rendered dashboards.

A dashboard spec lists sections of metrics crossed with dimension groups.
The compiler expands the cross product, aggregates the backing data, picks a
chart for every combination with deterministic rules, resolves shared axis
scales per section, and emits a stable chart-IR JSON artifact plus a
self-contained static HTML rendering.
"""

__version__ = "0.1.0"

from .data import (
    AggregateResult,
    ColumnType,
    DataTable,
    TableSchema,
    aggregate,
    auto_time_unit,
    infer_schema,
    load_csv,
)
from .emit import doc_to_ir, emit_html, emit_ir
from .expand import ChartIntent, ScaleResolution, expand, resolve_scales
from .layout import DashboardDoc, LayoutConfig, layout
from .model import (
    Aggregation,
    DashboardSpec,
    DimensionGroup,
    MetricLayout,
    MetricRef,
    Section,
    ValidationReport,
)
from .pipeline import (
    CompileRequest,
    PreviewSkeleton,
    ValidationFailure,
    build_doc,
    compile_request,
    compile_text,
    preview,
)
from .recommend import (
    ChartSpec,
    IncompatibleMark,
    Mark,
    PreferredAxis,
    compatible_marks,
    override_mark,
    recommend,
)
from .service import create_app
from .spec import ParseError, parse_spec, serialize_spec, validate_spec

__all__ = [
    "__version__",
    "AggregateResult",
    "Aggregation",
    "ChartIntent",
    "ChartSpec",
    "ColumnType",
    "CompileRequest",
    "DashboardDoc",
    "DashboardSpec",
    "DataTable",
    "DimensionGroup",
    "IncompatibleMark",
    "LayoutConfig",
    "Mark",
    "MetricLayout",
    "MetricRef",
    "ParseError",
    "PreferredAxis",
    "PreviewSkeleton",
    "ScaleResolution",
    "Section",
    "TableSchema",
    "ValidationFailure",
    "ValidationReport",
    "aggregate",
    "auto_time_unit",
    "build_doc",
    "compatible_marks",
    "compile_request",
    "compile_text",
    "create_app",
    "doc_to_ir",
    "emit_html",
    "emit_ir",
    "expand",
    "infer_schema",
    "layout",
    "load_csv",
    "override_mark",
    "parse_spec",
    "preview",
    "recommend",
    "resolve_scales",
    "serialize_spec",
    "validate_spec",
]
