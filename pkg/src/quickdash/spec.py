"""Parse, serialize, and validate external dashboard spec documents.

The external form is a JSON object:

    {"Sections": [{"Metrics": ["Sales (SUM)", {"field": "Profit", "agg": "MEAN"}],
                   "DimensionGroups": [{"PrimaryField": "Region",
                                        "SecondaryField": "Category"}],
                   "MetricLayout": "Repeat",
                   "Title": "Sales overview"}],
     "Title": "Q3 dashboard"}

Metric strings use the compact "Field (AGG)" form; COUNT(*) stands alone.
Unknown keys are rejected so typos surface instead of silently vanishing.
"""

from __future__ import annotations

import json
from dataclasses import replace

from .data import ColumnType, TableSchema
from .model import (
    AGGREGATION_TOKENS,
    AGGREGATION_TYPE_MISMATCH,
    COUNT_STAR_METRIC,
    DUPLICATE_FIELD_IN_GROUP,
    INVALID_DIMENSION_TYPE,
    METRIC_DEFAULTED,
    NUMERIC_AGGREGATIONS,
    UNKNOWN_FIELD,
    Aggregation,
    DashboardSpec,
    DimensionGroup,
    MetricLayout,
    MetricRef,
    Section,
    ValidationReport,
)


class ParseError(ValueError):
    """A structurally invalid spec document."""

    def __init__(self, message: str, path: str = "", line: int | None = None):
        super().__init__(message if not path else f"{path}: {message}")
        self.message = message
        self.path = path
        self.line = line

    def to_dict(self) -> dict:
        out: dict = {"code": type(self).__name__, "message": self.message, "path": self.path}
        if self.line is not None:
            out["line"] = self.line
        return out


class UnknownAggregation(ParseError):
    pass


class UnknownKey(ParseError):
    pass


_TOP_KEYS = frozenset({"Sections", "Title"})
_SECTION_KEYS = frozenset({"Metrics", "DimensionGroups", "MetricLayout", "Title"})
_GROUP_KEYS = frozenset({"PrimaryField", "SecondaryField"})
_METRIC_KEYS = frozenset({"field", "agg"})


def _require_object(node, path: str, what: str) -> dict:
    if not isinstance(node, dict):
        raise ParseError(f"{what} must be an object", path=path)
    return node


def _require_list(node, path: str, what: str) -> list:
    if not isinstance(node, list):
        raise ParseError(f"{what} must be an array", path=path)
    return node


def _reject_unknown_keys(obj: dict, allowed: frozenset[str], path: str) -> None:
    for key in obj:
        if key not in allowed:
            where = f"{path}.{key}" if path else key
            raise UnknownKey(f"unrecognized key {key!r}", path=where)


def _optional_string(obj: dict, key: str, path: str) -> str | None:
    value = obj.get(key)
    if value is None:
        return None
    if not isinstance(value, str):
        raise ParseError(f"{key!r} must be a string", path=f"{path}.{key}" if path else key)
    return value


def _parse_metric_token(token: str, path: str) -> MetricRef:
    text = token.strip()
    if text == "COUNT(*)":
        return COUNT_STAR_METRIC
    idx = text.rfind("(")
    if idx <= 0 or not text.endswith(")"):
        raise ParseError(
            f"metric must look like 'Field (AGG)' or 'COUNT(*)', got {token!r}", path=path
        )
    field = text[:idx].strip()
    agg_token = text[idx + 1 : -1].strip()
    if field == "COUNT" and agg_token == "*":
        return COUNT_STAR_METRIC
    if not field:
        raise ParseError(f"metric {token!r} is missing its field name", path=path)
    agg = AGGREGATION_TOKENS.get(agg_token)
    if agg is None:
        raise UnknownAggregation(f"unknown aggregation {agg_token!r}", path=path)
    if agg is Aggregation.COUNT_STAR:
        raise ParseError("COUNT(*) does not take a field", path=path)
    return MetricRef(field=field, aggregation=agg)


def _parse_metric_record(node: dict, path: str) -> MetricRef:
    _reject_unknown_keys(node, _METRIC_KEYS, path)
    agg_token = node.get("agg")
    if not isinstance(agg_token, str):
        raise ParseError("metric record needs a string 'agg'", path=path)
    agg = AGGREGATION_TOKENS.get(agg_token)
    if agg is None:
        raise UnknownAggregation(f"unknown aggregation {agg_token!r}", path=path)
    field = node.get("field")
    if agg is Aggregation.COUNT_STAR:
        if field is not None:
            raise ParseError("COUNT(*) does not take a field", path=path)
        return COUNT_STAR_METRIC
    if not isinstance(field, str) or not field:
        raise ParseError(f"aggregation {agg_token!r} needs a string 'field'", path=path)
    return MetricRef(field=field, aggregation=agg)


def _parse_metric(node, path: str) -> MetricRef:
    if isinstance(node, str):
        return _parse_metric_token(node, path)
    if isinstance(node, dict):
        return _parse_metric_record(node, path)
    raise ParseError("metric must be a string or a {field, agg} record", path=path)


def _parse_group(node, path: str) -> DimensionGroup:
    obj = _require_object(node, path, "dimension group")
    _reject_unknown_keys(obj, _GROUP_KEYS, path)
    primary = obj.get("PrimaryField")
    if not isinstance(primary, str) or not primary:
        raise ParseError("dimension group needs a string 'PrimaryField'", path=path)
    secondary = _optional_string(obj, "SecondaryField", path)
    return DimensionGroup(primary_field=primary, secondary_field=secondary)


def _parse_section(node, path: str) -> Section:
    obj = _require_object(node, path, "section")
    _reject_unknown_keys(obj, _SECTION_KEYS, path)
    metrics_node = obj.get("Metrics", [])
    metrics_list = _require_list(metrics_node, f"{path}.Metrics", "'Metrics'")
    metrics = tuple(
        _parse_metric(m, f"{path}.Metrics[{i}]") for i, m in enumerate(metrics_list)
    )
    groups_node = obj.get("DimensionGroups", [])
    groups_list = _require_list(groups_node, f"{path}.DimensionGroups", "'DimensionGroups'")
    groups = tuple(
        _parse_group(g, f"{path}.DimensionGroups[{i}]") for i, g in enumerate(groups_list)
    )
    layout_node = obj.get("MetricLayout")
    if layout_node is None:
        layout = MetricLayout.REPEAT
    elif isinstance(layout_node, str) and layout_node in (
        MetricLayout.LAYER.value,
        MetricLayout.REPEAT.value,
    ):
        layout = MetricLayout(layout_node)
    else:
        raise ParseError(
            f"'MetricLayout' must be 'Layer' or 'Repeat', got {layout_node!r}",
            path=f"{path}.MetricLayout",
        )
    title = _optional_string(obj, "Title", path)
    return Section(metrics=metrics, dimension_groups=groups, metric_layout=layout, title=title)


def parse_spec_document(doc) -> DashboardSpec:
    """Parse an already-decoded JSON document into a DashboardSpec."""
    obj = _require_object(doc, "", "spec document")
    _reject_unknown_keys(obj, _TOP_KEYS, "")
    if "Sections" not in obj:
        raise ParseError("missing required key 'Sections'")
    sections_list = _require_list(obj["Sections"], "Sections", "'Sections'")
    if not sections_list:
        raise ParseError("a dashboard needs at least one section", path="Sections")
    sections = tuple(
        _parse_section(node, f"Sections[{i}]") for i, node in enumerate(sections_list)
    )
    return DashboardSpec(sections=sections, title=_optional_string(obj, "Title", ""))


def parse_spec(text: str) -> DashboardSpec:
    """Parse a UTF-8 spec document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc
    return parse_spec_document(doc)


# ---------------------------------------------------------------------------
# Serialization (canonical external form; metrics as structured records)


def _metric_to_node(metric: MetricRef) -> dict:
    if metric.aggregation is Aggregation.COUNT_STAR:
        return {"agg": "COUNT(*)"}
    return {"field": metric.field, "agg": metric.aggregation.token}


def spec_to_document(spec: DashboardSpec) -> dict:
    sections = []
    for section in spec.sections:
        node: dict = {
            "Metrics": [_metric_to_node(m) for m in section.metrics],
            "DimensionGroups": [
                {"PrimaryField": g.primary_field, "SecondaryField": g.secondary_field}
                if g.secondary_field is not None
                else {"PrimaryField": g.primary_field}
                for g in section.dimension_groups
            ],
            "MetricLayout": section.metric_layout.value,
        }
        if section.title is not None:
            node["Title"] = section.title
        sections.append(node)
    doc: dict = {"Sections": sections}
    if spec.title is not None:
        doc["Title"] = spec.title
    return doc


def serialize_spec(spec: DashboardSpec, *, indent: int | None = 2) -> str:
    return json.dumps(spec_to_document(spec), indent=indent, ensure_ascii=False)


# ---------------------------------------------------------------------------
# Validation against a table schema


def validate_spec(
    spec: DashboardSpec, schema: TableSchema
) -> tuple[DashboardSpec, ValidationReport]:
    """Check every field reference and type, collecting all problems.

    Returns the normalized spec (sections without metrics get a COUNT(*)
    metric injected) together with the full report. Nothing is raised;
    callers refuse to compile when the report carries errors.
    """
    report = ValidationReport()
    sections = []
    for i, section in enumerate(spec.sections):
        for j, metric in enumerate(section.metrics):
            if metric.aggregation is Aggregation.COUNT_STAR:
                continue
            path = f"Sections[{i}].Metrics[{j}]"
            column = schema.column(metric.field)
            if column is None:
                report.error(UNKNOWN_FIELD, path, f"unknown column {metric.field!r}")
            elif (
                metric.aggregation in NUMERIC_AGGREGATIONS
                and column.type is not ColumnType.QUANTITATIVE
            ):
                report.error(
                    AGGREGATION_TYPE_MISMATCH,
                    path,
                    f"{metric.aggregation.value} requires a quantitative column, "
                    f"{metric.field!r} is {column.type.value}",
                )
        for j, group in enumerate(section.dimension_groups):
            base = f"Sections[{i}].DimensionGroups[{j}]"
            for key, name in (
                ("PrimaryField", group.primary_field),
                ("SecondaryField", group.secondary_field),
            ):
                if name is None:
                    continue
                path = f"{base}.{key}"
                column = schema.column(name)
                if column is None:
                    report.error(UNKNOWN_FIELD, path, f"unknown column {name!r}")
                elif column.type is ColumnType.QUANTITATIVE:
                    report.error(
                        INVALID_DIMENSION_TYPE,
                        path,
                        f"dimension {name!r} must be categorical or temporal, "
                        f"not quantitative",
                    )
            if group.secondary_field is not None and group.secondary_field == group.primary_field:
                report.error(
                    DUPLICATE_FIELD_IN_GROUP,
                    f"{base}.SecondaryField",
                    f"group repeats field {group.primary_field!r}",
                )
        metrics = section.metrics
        if not metrics:
            metrics = (COUNT_STAR_METRIC,)
            report.warning(
                METRIC_DEFAULTED,
                f"Sections[{i}]",
                "section has no metrics; defaulting to COUNT(*)",
            )
        sections.append(replace(section, metrics=metrics))
    normalized = replace(spec, sections=tuple(sections))
    return normalized, report
