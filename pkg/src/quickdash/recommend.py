"""Rule-based chart recommendation: one intent in, exactly one chart out."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Mapping

from .data import AggregateResult, ColumnType, TableSchema
from .expand import ChartIntent, ScaleResolution
from .model import DimensionGroup, MetricRef


class Mark(str, Enum):
    LINE = "line"
    BAR = "bar"
    GROUPED_BAR = "grouped_bar"
    MULTI_LINE = "multi_line"
    KPI_CARD = "kpi_card"


#: Encoding channels. column-facet splits a chart into side-by-side panels.
CHANNEL_X = "x"
CHANNEL_Y = "y"
CHANNEL_COLOR = "color"
CHANNEL_FACET = "column-facet"

#: Bars with more categories than this keep only the largest ones.
BAR_CATEGORY_LIMIT = 20


class NoApplicableRule(Exception):
    """No recommendation rule matched; unreachable for validated input."""


class IncompatibleMark(Exception):
    """Requested mark cannot encode the chart's fields."""


@dataclass(frozen=True)
class PreferredAxis:
    """Optional per-field channel requests, honored when types allow."""

    assignments: Mapping[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class Encoding:
    """One channel binding: either a dimension field or the metric value(s)."""

    channel: str
    field: str | None = None
    field_type: ColumnType | None = None
    time_unit: str | None = None
    metrics: tuple[MetricRef, ...] = ()
    domain: tuple[float, float] | None = None
    title: str = ""


@dataclass(frozen=True)
class ChartSpec:
    """A recommended chart: mark, encodings, and its aggregated data."""

    mark: Mark
    encodings: tuple[Encoding, ...]
    data: AggregateResult | None
    title: str
    section_index: int
    row_hint: int
    col_hint: int
    editable: bool = True

    def encoding(self, channel: str) -> Encoding | None:
        for enc in self.encodings:
            if enc.channel == channel:
                return enc
        return None


def select_mark(
    metric_count: int, group: DimensionGroup | None, schema: TableSchema
) -> tuple[Mark, bool]:
    """Pick the mark for a (metric count, dimension group) shape.

    Returns (mark, facet_by_secondary). The rules, by field types:

    * no group            -> kpi_card
    * 1 metric, temporal  -> line
    * 1 metric, categorical -> bar (largest 20 categories kept)
    * 1 metric, two dims  -> multi_line when a temporal is present (it takes
      x, the other dim colors), else grouped_bar (primary x, secondary color)
    * layered metrics, one dim -> multi_line/grouped_bar with the metric
      name as the color series
    * layered metrics, two dims -> facet by the secondary field and color by
      metric name, so at most three distinct fields are ever encoded
    """
    if group is None:
        return Mark.KPI_CARD, False
    column = schema.column(group.primary_field)
    if column is None:
        raise NoApplicableRule(f"unknown column {group.primary_field!r}")
    ptype = column.type
    stype = None
    if group.secondary_field is not None:
        column = schema.column(group.secondary_field)
        if column is None:
            raise NoApplicableRule(f"unknown column {group.secondary_field!r}")
        stype = column.type
    layered = metric_count > 1
    if stype is None:
        if layered:
            return (Mark.MULTI_LINE if ptype is ColumnType.TEMPORAL else Mark.GROUPED_BAR), False
        return (Mark.LINE if ptype is ColumnType.TEMPORAL else Mark.BAR), False
    if layered:
        return (Mark.MULTI_LINE if ptype is ColumnType.TEMPORAL else Mark.GROUPED_BAR), True
    if ColumnType.TEMPORAL in (ptype, stype):
        return Mark.MULTI_LINE, False
    return Mark.GROUPED_BAR, False


def _union_domain(
    scales: ScaleResolution, section_index: int, metrics: tuple[MetricRef, ...]
) -> tuple[float, float]:
    domains = [scales.domain(section_index, m) for m in metrics]
    return (min(d[0] for d in domains), max(d[1] for d in domains))


def _dimension_encoding(
    channel: str, name: str, schema: TableSchema, time_unit: str | None
) -> Encoding:
    ftype = schema.column_type(name)
    return Encoding(
        channel=channel,
        field=name,
        field_type=ftype,
        time_unit=time_unit if ftype is ColumnType.TEMPORAL else None,
        title=name,
    )


def _truncate_bar_categories(data: AggregateResult) -> AggregateResult:
    if len(data.rows) <= BAR_CATEGORY_LIMIT:
        return data
    kept = sorted(data.rows, key=lambda row: (-float(row.values[0]), row.keys))
    dropped = len(kept) - BAR_CATEGORY_LIMIT
    return replace(
        data,
        rows=tuple(kept[:BAR_CATEGORY_LIMIT]),
        dropped_categories=data.dropped_categories + dropped,
    )


def _apply_preferred(chart: ChartSpec, preferred: PreferredAxis) -> ChartSpec:
    """Swap the x and color dimension fields when explicitly asked to.

    Only swaps that keep the mark drawable are honored (lines keep a temporal
    x); everything else is ignored.
    """
    x = chart.encoding(CHANNEL_X)
    color = chart.encoding(CHANNEL_COLOR)
    if x is None or color is None or color.field is None:
        return chart
    for name, channel in preferred.assignments.items():
        wants_swap = (channel == CHANNEL_X and color.field == name) or (
            channel == CHANNEL_COLOR and x.field == name
        )
        if not wants_swap:
            continue
        if chart.mark in (Mark.LINE, Mark.MULTI_LINE) and color.field_type is not ColumnType.TEMPORAL:
            continue
        swapped = []
        for enc in chart.encodings:
            if enc.channel == CHANNEL_X:
                swapped.append(replace(color, channel=CHANNEL_X))
            elif enc.channel == CHANNEL_COLOR:
                swapped.append(replace(x, channel=CHANNEL_COLOR))
            else:
                swapped.append(enc)
        return replace(chart, encodings=tuple(swapped))
    return chart


def recommend(
    intent: ChartIntent,
    schema: TableSchema,
    scales: ScaleResolution,
    data: AggregateResult | None = None,
    preferred: PreferredAxis | None = None,
) -> ChartSpec:
    """Map one intent to exactly one chart.

    Deterministic: the same intent, schema, and scales always produce the
    same chart. Metric axis domains come from the resolved per-section
    scales; layered metrics share one y axis covering their union.
    """
    group = intent.group
    mark, facet = select_mark(len(intent.metrics), group, schema)
    time_unit = data.time_unit if data is not None else None
    labels = [m.label for m in intent.metrics]
    y = Encoding(
        channel=CHANNEL_Y,
        metrics=intent.metrics,
        domain=_union_domain(scales, intent.section_index, intent.metrics),
        title=", ".join(labels),
    )

    encodings: list[Encoding] = []
    if group is not None:
        if facet:
            encodings.append(
                _dimension_encoding(CHANNEL_X, group.primary_field, schema, time_unit)
            )
            encodings.append(y)
            encodings.append(Encoding(channel=CHANNEL_COLOR, metrics=intent.metrics, title="Metric"))
            encodings.append(
                _dimension_encoding(CHANNEL_FACET, group.secondary_field, schema, time_unit)
            )
        elif group.secondary_field is None:
            encodings.append(
                _dimension_encoding(CHANNEL_X, group.primary_field, schema, time_unit)
            )
            encodings.append(y)
            if intent.layered:
                encodings.append(
                    Encoding(channel=CHANNEL_COLOR, metrics=intent.metrics, title="Metric")
                )
        else:
            ptype = schema.column_type(group.primary_field)
            stype = schema.column_type(group.secondary_field)
            if stype is ColumnType.TEMPORAL and ptype is not ColumnType.TEMPORAL:
                x_field, color_field = group.secondary_field, group.primary_field
            else:
                x_field, color_field = group.primary_field, group.secondary_field
            encodings.append(_dimension_encoding(CHANNEL_X, x_field, schema, time_unit))
            encodings.append(y)
            encodings.append(_dimension_encoding(CHANNEL_COLOR, color_field, schema, time_unit))
    else:
        encodings.append(y)

    chart_data = data
    if chart_data is not None and mark is Mark.BAR:
        chart_data = _truncate_bar_categories(chart_data)

    if group is None:
        title = ", ".join(labels)
    else:
        title = f"{', '.join(labels)} by {' and '.join(group.fields)}"

    chart = ChartSpec(
        mark=mark,
        encodings=tuple(encodings),
        data=chart_data,
        title=title,
        section_index=intent.section_index,
        row_hint=intent.row_hint,
        col_hint=intent.col_hint,
    )
    if preferred is not None:
        chart = _apply_preferred(chart, preferred)
    return chart


# ---------------------------------------------------------------------------
# Post-hoc mark overrides


def _structure(chart: ChartSpec) -> tuple[bool, bool, bool]:
    x = chart.encoding(CHANNEL_X)
    color = chart.encoding(CHANNEL_COLOR)
    has_x = x is not None
    x_temporal = has_x and x.field_type is ColumnType.TEMPORAL
    has_series = color is not None
    return has_x, x_temporal, has_series


def compatible_marks(chart: ChartSpec) -> tuple[Mark, ...]:
    """Marks that can encode this chart's fields without dropping any."""
    has_x, x_temporal, has_series = _structure(chart)
    if not has_x:
        return (Mark.KPI_CARD,)
    if has_series:
        return (Mark.GROUPED_BAR, Mark.MULTI_LINE) if x_temporal else (Mark.GROUPED_BAR,)
    return (Mark.BAR, Mark.LINE) if x_temporal else (Mark.BAR,)


def override_mark(chart: ChartSpec, new_mark: Mark) -> ChartSpec:
    """Return a copy of the chart with the mark replaced.

    The encodings already describe the fields, so a compatible override
    changes only the mark; temporal x axes keep their bin unit.
    """
    new_mark = Mark(new_mark)
    if new_mark not in compatible_marks(chart):
        has_x, x_temporal, has_series = _structure(chart)
        if new_mark in (Mark.LINE, Mark.MULTI_LINE) and not x_temporal:
            reason = "an ordered (temporal) x axis" if has_x else "an x field"
            raise IncompatibleMark(f"{new_mark.value} requires {reason}")
        if new_mark is Mark.KPI_CARD:
            raise IncompatibleMark("kpi_card cannot encode dimension fields")
        if new_mark in (Mark.GROUPED_BAR, Mark.MULTI_LINE) and not has_series:
            raise IncompatibleMark(f"{new_mark.value} requires a series (color) field")
        if new_mark in (Mark.BAR, Mark.LINE) and has_series:
            raise IncompatibleMark(f"{new_mark.value} cannot encode the series field")
        raise IncompatibleMark(f"{new_mark.value} requires an x field")
    return replace(chart, mark=new_mark)
