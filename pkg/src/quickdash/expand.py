"""Expand sections into chart intents and resolve shared per-section axis scales."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .data import AggregateResult, ColumnType, DataTable, aggregate, auto_time_unit
from .model import DashboardSpec, DimensionGroup, MetricLayout, MetricRef


@dataclass(frozen=True)
class ChartIntent:
    """One (metrics, dimension group) combination awaiting recommendation.

    Under Repeat the metrics tuple is a singleton; under Layer it carries the
    whole section metric list in authored order. row/col hints pin the chart
    to its grid cell (metric row, group column).
    """

    section_index: int
    metrics: tuple[MetricRef, ...]
    group: DimensionGroup | None
    row_hint: int
    col_hint: int

    @property
    def layered(self) -> bool:
        return len(self.metrics) > 1


def expand(spec: DashboardSpec) -> list[ChartIntent]:
    """Cross every metric with every dimension group, section by section.

    Repeat sections yield one intent per (metric, group) pair; Layer sections
    yield one intent per group carrying all metrics. A section without groups
    degenerates to KPI intents (group None). Order is section-major, then
    row-major within the section grid.
    """
    intents: list[ChartIntent] = []
    for s, section in enumerate(spec.sections):
        groups = section.dimension_groups
        if section.metric_layout is MetricLayout.LAYER:
            if groups:
                for c, group in enumerate(groups):
                    intents.append(ChartIntent(s, section.metrics, group, 0, c))
            else:
                intents.append(ChartIntent(s, section.metrics, None, 0, 0))
        else:
            if groups:
                for r, metric in enumerate(section.metrics):
                    for c, group in enumerate(groups):
                        intents.append(ChartIntent(s, (metric,), group, r, c))
            else:
                for r, metric in enumerate(section.metrics):
                    intents.append(ChartIntent(s, (metric,), None, r, 0))
    return intents


@dataclass(frozen=True)
class ScaleResolution:
    """Shared metric axis domains, one entry per (section, metric)."""

    entries: Mapping[tuple[int, MetricRef], tuple[float, float]]

    def domain(self, section_index: int, metric: MetricRef) -> tuple[float, float]:
        return self.entries[(section_index, metric)]


def intent_time_unit(table: DataTable, intent: ChartIntent) -> str | None:
    """Bin unit for the intent's first temporal group field, if any."""
    if intent.group is None:
        return None
    for name in intent.group.fields:
        if table.schema.column_type(name) is ColumnType.TEMPORAL:
            return auto_time_unit(table, name)
    return None


def aggregate_intent(table: DataTable, intent: ChartIntent) -> AggregateResult:
    """Run the grouped aggregation backing one intent."""
    return aggregate(table, intent.metrics, intent.group, intent_time_unit(table, intent))


def resolve_scales_from_results(
    pairs: Iterable[tuple[ChartIntent, AggregateResult]],
) -> ScaleResolution:
    """Resolve shared domains from already-computed aggregations.

    For each (section, metric) the domain spans [min(0, observed min),
    observed max] over every chart of that section containing the metric, so
    any two such charts share one axis exactly. A degenerate domain widens to
    [min(0, v), max(1, v)] to keep a positive axis extent.
    """
    spans: dict[tuple[int, MetricRef], tuple[float, float]] = {}
    for intent, result in pairs:
        for i, metric in enumerate(result.metrics):
            key = (intent.section_index, metric)
            lo, hi = spans.get(key, (float("inf"), float("-inf")))
            for row in result.rows:
                value = float(row.values[i])
                if value < lo:
                    lo = value
                if value > hi:
                    hi = value
            spans[key] = (lo, hi)
    entries: dict[tuple[int, MetricRef], tuple[float, float]] = {}
    for key, (lo, hi) in spans.items():
        if lo > hi:  # intent produced no rows; fall back to the unit domain
            lo = hi = 0.0
        dmin = min(0.0, lo)
        dmax = float(hi)
        if dmin == dmax:
            dmin, dmax = min(0.0, dmin), max(1.0, dmax)
        entries[key] = (dmin, dmax)
    return ScaleResolution(entries)


def resolve_scales(intents: Iterable[ChartIntent], table: DataTable) -> ScaleResolution:
    """Aggregate every intent and resolve shared per-section metric domains."""
    return resolve_scales_from_results(
        (intent, aggregate_intent(table, intent)) for intent in intents
    )
