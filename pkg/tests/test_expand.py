"""Cross-product expansion and shared per-section scale resolution."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quickdash.data import ColumnType, table_from_values
from quickdash.expand import (
    aggregate_intent,
    expand,
    intent_time_unit,
    resolve_scales,
)
from quickdash.model import (
    Aggregation,
    DashboardSpec,
    DimensionGroup,
    MetricLayout,
    MetricRef,
    Section,
)
from quickdash.spec import parse_spec, validate_spec

from .strategies import specs

SALES = MetricRef("Sales", Aggregation.SUM)
SHIPPING = MetricRef("Shipping Cost", Aggregation.SUM)


def expected_count(section) -> int:
    groups = max(len(section.dimension_groups), 1)
    if section.metric_layout is MetricLayout.LAYER:
        return groups
    return groups * max(len(section.metrics), 1)


class TestExpand:
    def test_repeat_two_by_two(self, example1_spec):
        intents = expand(example1_spec)
        assert len(intents) == 4
        assert [(i.row_hint, i.col_hint) for i in intents] == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert all(len(i.metrics) == 1 for i in intents)
        # metric rows, group columns
        assert intents[0].metrics == (SALES,)
        assert intents[1].metrics == (SALES,)
        assert intents[2].metrics == (SHIPPING,)
        assert intents[0].group == intents[2].group

    def test_layer_carries_all_metrics(self, example2_spec):
        intents = expand(example2_spec)
        assert len(intents) == 2
        assert all(i.metrics == (SALES, SHIPPING) for i in intents)
        assert [i.col_hint for i in intents] == [0, 1]

    def test_multi_section_counts(self, example3_spec):
        intents = expand(example3_spec)
        assert len(intents) == 6
        assert [i.section_index for i in intents] == [0, 0, 1, 1, 1, 1]

    def test_layer_with_single_metric_matches_repeat(self):
        metrics = (SALES,)
        groups = (DimensionGroup("Region"), DimensionGroup("Category"))
        layer = DashboardSpec(
            sections=(Section(metrics, groups, MetricLayout.LAYER),)
        )
        repeat = DashboardSpec(
            sections=(Section(metrics, groups, MetricLayout.REPEAT),)
        )
        assert expand(layer) == expand(repeat)

    def test_kpi_intents_for_empty_groups(self):
        spec = DashboardSpec(
            sections=(
                Section(metrics=(SALES, SHIPPING), metric_layout=MetricLayout.REPEAT),
            )
        )
        intents = expand(spec)
        assert [(i.row_hint, i.col_hint, i.group) for i in intents] == [
            (0, 0, None),
            (1, 0, None),
        ]

    def test_layered_kpi_intent(self):
        spec = DashboardSpec(
            sections=(Section(metrics=(SALES, SHIPPING), metric_layout=MetricLayout.LAYER),)
        )
        intents = expand(spec)
        assert len(intents) == 1
        assert intents[0].metrics == (SALES, SHIPPING)

    @settings(max_examples=150)
    @given(data=st.data())
    def test_counting_law(self, superstore_schema, data):
        spec = data.draw(specs(superstore_schema))
        intents = expand(spec)
        for s, section in enumerate(spec.sections):
            assert sum(1 for i in intents if i.section_index == s) == expected_count(section)

    @settings(max_examples=80)
    @given(data=st.data())
    def test_order_preserved(self, superstore_schema, data):
        spec = data.draw(specs(superstore_schema))
        intents = expand(spec)
        assert [i.section_index for i in intents] == sorted(i.section_index for i in intents)
        for s, section in enumerate(spec.sections):
            own = [i for i in intents if i.section_index == s]
            if section.metric_layout is MetricLayout.REPEAT and section.dimension_groups:
                expected = [
                    ((m,), g)
                    for m in section.metrics
                    for g in section.dimension_groups
                ]
                assert [(i.metrics, i.group) for i in own] == expected
            if section.metric_layout is MetricLayout.LAYER and section.dimension_groups:
                assert [i.group for i in own] == list(section.dimension_groups)


class TestScales:
    def test_shared_domain_covers_both_charts(self):
        # two charts of one section with different maxima share one domain
        table = table_from_values(
            ["Sales", "Region", "Category"],
            [ColumnType.QUANTITATIVE, ColumnType.CATEGORICAL, ColumnType.CATEGORICAL],
            [
                [120.0, 60.0, 300.0, 100.0],
                ["a", "b", "a", "b"],
                ["x", "x", "y", "y"],
            ],
        )
        spec = DashboardSpec(
            sections=(
                Section(
                    metrics=(SALES,),
                    dimension_groups=(DimensionGroup("Region"), DimensionGroup("Category")),
                ),
            )
        )
        intents = expand(spec)
        # brute-force the expected maximum chart value per group
        by_region_max = max(120.0 + 300.0, 60.0 + 100.0)
        by_category_max = max(120.0 + 60.0, 300.0 + 100.0)
        expected_hi = max(by_region_max, by_category_max)
        scales = resolve_scales(intents, table)
        assert scales.domain(0, SALES) == (0.0, expected_hi)

    def test_all_zero_values_widen_to_unit_domain(self):
        table = table_from_values(
            ["Sales", "Region"],
            [ColumnType.QUANTITATIVE, ColumnType.CATEGORICAL],
            [[0.0, 0.0], ["a", "b"]],
        )
        spec = DashboardSpec(
            sections=(Section(metrics=(SALES,), dimension_groups=(DimensionGroup("Region"),)),)
        )
        scales = resolve_scales(expand(spec), table)
        assert scales.domain(0, SALES) == (0.0, 1.0)

    def test_constant_negative_values_widen(self):
        table = table_from_values(
            ["Sales", "Region"],
            [ColumnType.QUANTITATIVE, ColumnType.CATEGORICAL],
            [[-3.0, -3.0], ["a", "b"]],
        )
        spec = DashboardSpec(
            sections=(Section(metrics=(SALES,), dimension_groups=(DimensionGroup("Region"),)),)
        )
        scales = resolve_scales(expand(spec), table)
        assert scales.domain(0, SALES) == (-3.0, 1.0)

    def test_negative_minimum_is_kept(self):
        table = table_from_values(
            ["Sales", "Region"],
            [ColumnType.QUANTITATIVE, ColumnType.CATEGORICAL],
            [[-5.0, 9.0], ["a", "b"]],
        )
        spec = DashboardSpec(
            sections=(Section(metrics=(SALES,), dimension_groups=(DimensionGroup("Region"),)),)
        )
        scales = resolve_scales(expand(spec), table)
        assert scales.domain(0, SALES) == (-5.0, 9.0)

    def test_sections_do_not_share_domains(self, superstore_table):
        text = json.dumps(
            {
                "Sections": [
                    {"Metrics": ["Sales (SUM)"], "DimensionGroups": [{"PrimaryField": "Region"}]},
                    {"Metrics": ["Sales (SUM)"], "DimensionGroups": [{"PrimaryField": "Ship Date"}]},
                ]
            }
        )
        spec, report = validate_spec(parse_spec(text), superstore_table.schema)
        assert report.ok
        scales = resolve_scales(expand(spec), superstore_table)
        assert scales.domain(0, SALES) != scales.domain(1, SALES)

    @settings(max_examples=40, deadline=None)
    @given(data=st.data())
    def test_consistency_and_coverage(self, superstore_table, data):
        spec = data.draw(specs(superstore_table.schema))
        normalized, report = validate_spec(spec, superstore_table.schema)
        assert report.ok
        intents = expand(normalized)
        scales = resolve_scales(intents, superstore_table)
        for intent in intents:
            result = aggregate_intent(superstore_table, intent)
            for i, metric in enumerate(result.metrics):
                lo, hi = scales.domain(intent.section_index, metric)
                assert lo <= hi
                for value in result.metric_values(i):
                    assert lo <= float(value) <= hi

    def test_time_unit_for_temporal_group(self, superstore_table):
        intent = expand(
            DashboardSpec(
                sections=(
                    Section(metrics=(SALES,), dimension_groups=(DimensionGroup("Ship Date"),)),
                )
            )
        )[0]
        assert intent_time_unit(superstore_table, intent) == "month"
        result = aggregate_intent(superstore_table, intent)
        assert result.time_unit == "month"
