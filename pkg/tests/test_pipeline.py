"""Compile pipeline and the data-free preview skeleton."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quickdash.model import UNKNOWN_FIELD
from quickdash.pipeline import (
    CompileRequest,
    ValidationFailure,
    build_doc,
    compile_request,
    compile_text,
    preview,
    preview_text,
)
from quickdash.spec import parse_spec, validate_spec

from .strategies import specs


class TestCompile:
    def test_validation_failure_carries_report(self, superstore_table):
        text = json.dumps({"Sections": [{"Metrics": ["Profit (SUM)"]}]})
        with pytest.raises(ValidationFailure) as exc:
            compile_text(text, superstore_table)
        errors = exc.value.report.errors
        assert [e.code for e in errors] == [UNKNOWN_FIELD]
        assert errors[0].path == "Sections[0].Metrics[0]"

    def test_compile_request_formats(self, example1_text):
        from .conftest import DATA_DIR

        result = compile_request(
            CompileRequest(
                spec_text=example1_text,
                data_path=DATA_DIR / "superstore.csv",
                output="both",
            )
        )
        assert result.ir is not None and result.html is not None
        assert json.loads(result.ir)["irVersion"] == 1

    def test_bad_output_format_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            CompileRequest(spec_text="{}", data_path=tmp_path / "x.csv", output="pdf")


class TestPreview:
    def test_example1_skeleton(self, superstore_schema, example1_spec):
        skeleton = preview(example1_spec, superstore_schema)
        assert skeleton.chart_count == 4
        section = skeleton.sections[0]
        assert (section.rows, section.cols) == (2, 2)
        marks = [c.mark for c in section.cells]
        assert marks == ["line", "bar", "line", "bar"]
        assert sorted(marks) == ["bar", "bar", "line", "line"]
        assert section.cells[0].metrics == ("Sales (SUM)",)
        assert section.cells[0].group == ("Ship Date",)

    def test_example2_skeleton_layered(self, superstore_schema, example2_spec):
        skeleton = preview(example2_spec, superstore_schema)
        assert skeleton.chart_count == 2
        section = skeleton.sections[0]
        assert (section.rows, section.cols) == (1, 2)
        assert all(c.metrics == ("Sales (SUM)", "Shipping Cost (SUM)") for c in section.cells)
        assert [c.mark for c in section.cells] == ["multi_line", "multi_line"]

    def test_empty_document_gives_zero_sections_plus_error(self, superstore_schema):
        skeleton = preview_text('{"Sections": []}', superstore_schema)
        assert skeleton.sections == ()
        assert skeleton.errors and skeleton.errors[0]["code"] == "ParseError"

    def test_invalid_sections_are_annotated_not_fatal(self, superstore_schema):
        text = json.dumps(
            {
                "Sections": [
                    {"Metrics": ["Sales (SUM)"], "DimensionGroups": [{"PrimaryField": "Region"}]},
                    {"Metrics": ["Profit (SUM)"]},
                ]
            }
        )
        skeleton = preview_text(text, superstore_schema)
        assert len(skeleton.sections) == 2
        good, bad = skeleton.sections
        assert len(good.cells) == 1 and not good.errors
        assert not bad.cells and [e.code for e in bad.errors] == [UNKNOWN_FIELD]

    def test_defaulted_metric_shows_count_star_placeholder(self, superstore_schema):
        text = json.dumps(
            {"Sections": [{"DimensionGroups": [{"PrimaryField": "Region"}]}]}
        )
        skeleton = preview_text(text, superstore_schema)
        assert skeleton.sections[0].cells[0].metrics == ("COUNT(*)",)
        assert skeleton.warnings

    def test_to_dict_shape(self, superstore_schema, example3_spec):
        payload = preview(example3_spec, superstore_schema).to_dict()
        assert payload["chartCount"] == 6
        assert [s["chartCount"] for s in payload["sections"]] == [2, 4]

    @settings(max_examples=60, deadline=None)
    @given(data=st.data())
    def test_skeleton_agrees_with_compiled_doc(self, superstore_table, data):
        spec = data.draw(specs(superstore_table.schema, min_metrics=0))
        skeleton = preview(spec, superstore_table.schema)
        doc = build_doc(spec, superstore_table)
        assert len(skeleton.sections) == len(doc.sections)
        assert skeleton.chart_count == len(doc.charts)
        for sk, grid in zip(skeleton.sections, doc.sections):
            assert (sk.rows, sk.cols) == (grid.rows, grid.cols)
            assert len(sk.cells) == len(grid.cells)
        # predicted marks match the compiled marks cell by cell
        cellmap = doc.cellmap()
        for sk in skeleton.sections:
            for cell in sk.cells:
                chart = doc.charts[cellmap[(sk.index, cell.row, cell.col)]]
                assert cell.mark == chart.mark.value
