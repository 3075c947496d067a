"""Hypothesis strategies shared across the property tests."""

from __future__ import annotations

from hypothesis import strategies as st

from quickdash.data import ColumnType, DataTable, TableSchema, table_from_values
from quickdash.model import (
    Aggregation,
    COUNT_STAR_METRIC,
    DashboardSpec,
    DimensionGroup,
    MetricLayout,
    MetricRef,
    Section,
)

_NUMERIC_AGGS = (Aggregation.SUM, Aggregation.MEAN, Aggregation.MIN, Aggregation.MAX)

field_names = st.text(
    alphabet="abcdefghijklmnopqrstuvwxyz ABCDEFGHIJKLMNO_",
    min_size=1,
    max_size=12,
).map(str.strip).filter(bool)


def metric_refs(schema: TableSchema) -> st.SearchStrategy[MetricRef]:
    quantitative = [c.name for c in schema.columns if c.type is ColumnType.QUANTITATIVE]
    any_column = [c.name for c in schema.columns]
    options: list[st.SearchStrategy[MetricRef]] = [st.just(COUNT_STAR_METRIC)]
    if quantitative:
        options.append(
            st.builds(
                MetricRef,
                field=st.sampled_from(quantitative),
                aggregation=st.sampled_from(_NUMERIC_AGGS),
            )
        )
    options.append(
        st.builds(
            MetricRef,
            field=st.sampled_from(any_column),
            aggregation=st.just(Aggregation.COUNT),
        )
    )
    return st.one_of(options)


def dimension_groups(schema: TableSchema) -> st.SearchStrategy[DimensionGroup]:
    dims = [
        c.name
        for c in schema.columns
        if c.type in (ColumnType.CATEGORICAL, ColumnType.TEMPORAL)
    ]

    def build(primary: str, secondary: str | None) -> DimensionGroup:
        if secondary == primary:
            secondary = None
        return DimensionGroup(primary_field=primary, secondary_field=secondary)

    return st.builds(
        build,
        primary=st.sampled_from(dims),
        secondary=st.one_of(st.none(), st.sampled_from(dims)),
    )


def sections(schema: TableSchema, min_metrics: int = 1) -> st.SearchStrategy[Section]:
    return st.builds(
        Section,
        metrics=st.lists(metric_refs(schema), min_size=min_metrics, max_size=3).map(tuple),
        dimension_groups=st.lists(dimension_groups(schema), max_size=3).map(tuple),
        metric_layout=st.sampled_from(MetricLayout),
        title=st.one_of(st.none(), st.just("A section")),
    )


def specs(schema: TableSchema, min_metrics: int = 1) -> st.SearchStrategy[DashboardSpec]:
    """Valid dashboard specs bound to the given schema."""
    return st.builds(
        DashboardSpec,
        sections=st.lists(sections(schema, min_metrics), min_size=1, max_size=3).map(tuple),
        title=st.one_of(st.none(), st.just("A dashboard")),
    )


_CATEGORIES = ("north", "south", "east", "west", "hub", "edge")
_DAY_MS = 86_400_000


@st.composite
def tables(draw, max_rows: int = 60) -> DataTable:
    """Small random tables with one or two columns of each semantic type."""
    n = draw(st.integers(min_value=1, max_value=max_rows))
    names: list[str] = []
    types: list[ColumnType] = []
    columns: list[list] = []

    def add(name: str, ctype: ColumnType, cells: st.SearchStrategy):
        names.append(name)
        types.append(ctype)
        columns.append(draw(st.lists(cells, min_size=n, max_size=n)))

    quant = st.one_of(
        st.none(),
        st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, width=32),
    )
    cat = st.one_of(st.none(), st.sampled_from(_CATEGORIES))
    stamp = st.one_of(
        st.none(),
        st.integers(min_value=0, max_value=400 * _DAY_MS).map(lambda d: d * 3),
    )
    add("amount", ColumnType.QUANTITATIVE, quant)
    if draw(st.booleans()):
        add("score", ColumnType.QUANTITATIVE, quant)
    add("region", ColumnType.CATEGORICAL, cat)
    if draw(st.booleans()):
        add("segment", ColumnType.CATEGORICAL, cat)
    if draw(st.booleans()):
        add("when", ColumnType.TEMPORAL, stamp)
    return table_from_values(names, types, columns)
