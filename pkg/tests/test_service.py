"""HTTP endpoints: schema, preview, compile, and the UI fallback page."""

import json

import pytest
from fastapi.testclient import TestClient

from quickdash.service import create_app


@pytest.fixture(scope="module")
def client(superstore_table):
    return TestClient(create_app(superstore_table))


def test_get_schema(client, superstore_table):
    response = client.get("/schema")
    assert response.status_code == 200
    body = response.json()
    assert body["rowCount"] == superstore_table.row_count
    assert [c["name"] for c in body["columns"]] == [
        "Sales",
        "Shipping Cost",
        "Ship Date",
        "Region",
        "Category",
    ]


def test_preview_example3(client, example3_text):
    response = client.post("/preview", content=example3_text)
    assert response.status_code == 200
    body = response.json()
    assert [s["chartCount"] for s in body["sections"]] == [2, 4]
    assert body["chartCount"] == 6


def test_preview_with_unparseable_spec_still_responds(client):
    response = client.post("/preview", content='{"Sections": []}')
    assert response.status_code == 200
    body = response.json()
    assert body["sections"] == []
    assert body["errors"]


def test_preview_with_invalid_json_body(client):
    response = client.post("/preview", content="{nope")
    assert response.status_code == 400


def test_compile_returns_ir(client, example1_text):
    response = client.post("/compile", content=example1_text)
    assert response.status_code == 200
    ir = response.json()
    assert ir["irVersion"] == 1
    assert len(ir["charts"]) == 4
    assert (ir["sections"][0]["rows"], ir["sections"][0]["cols"]) == (2, 2)


def test_compile_is_byte_identical_across_calls(client, example1_text):
    a = client.post("/compile", content=example1_text).content
    b = client.post("/compile", content=example1_text).content
    assert a == b


def test_compile_invalid_spec_is_422_with_report(client):
    spec = json.dumps({"Sections": [{"Metrics": ["Profit (SUM)"]}]})
    response = client.post("/compile", content=spec)
    assert response.status_code == 422
    body = response.json()
    assert body["errors"][0]["code"] == "UnknownField"
    assert body["errors"][0]["path"] == "Sections[0].Metrics[0]"


def test_compile_parse_failure_is_400(client):
    response = client.post("/compile", content=json.dumps({"Sections": [], "Junk": 1}))
    assert response.status_code == 400
    assert "error" in response.json()


def test_root_serves_fallback_page_without_bundle(client):
    response = client.get("/")
    assert response.status_code == 200
    assert "quickdash" in response.text


def test_root_serves_ui_bundle_when_present(superstore_table, tmp_path):
    (tmp_path / "index.html").write_text("<html><body>authoring ui</body></html>")
    app = create_app(superstore_table, ui_dir=tmp_path)
    with TestClient(app) as ui_client:
        response = ui_client.get("/")
        assert response.status_code == 200
        assert "authoring ui" in response.text
        # API routes still win over the static mount
        assert ui_client.get("/schema").status_code == 200
