"""Local HTTP service backing the authoring UI: schema, preview, compile."""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from . import __version__
from .data import DataTable
from .emit import emit_ir
from .layout import LayoutConfig
from .pipeline import ValidationFailure, build_doc, preview_document
from .spec import ParseError, parse_spec_document

_FALLBACK_PAGE = """<!DOCTYPE html>
<html><head><meta charset="utf-8"><title>quickdash</title></head>
<body style="font-family: system-ui; max-width: 40em; margin: 3em auto;">
<h1>quickdash service</h1>
<p>No authoring UI bundle is installed. The JSON API is live:</p>
<ul>
<li><code>GET /schema</code></li>
<li><code>POST /preview</code> (body: spec document)</li>
<li><code>POST /compile</code> (body: spec document; returns chart-IR)</li>
</ul>
</body></html>
"""


async def _json_body(request: Request):
    payload = await request.body()
    return json.loads(payload.decode("utf-8"))


def create_app(
    table: DataTable,
    *,
    ui_dir: Path | None = None,
    config: LayoutConfig | None = None,
) -> FastAPI:
    """Build the service around one immutable table.

    Handlers are pure functions over the shared table, so concurrent
    requests need no coordination.
    """
    app = FastAPI(title="quickdash", version=__version__)
    schema = table.schema

    @app.get("/schema")
    def get_schema() -> JSONResponse:
        return JSONResponse(table.to_dict())

    @app.post("/preview")
    async def post_preview(request: Request) -> JSONResponse:
        try:
            doc = await _json_body(request)
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            return JSONResponse(
                {"error": {"code": "ParseError", "message": f"invalid JSON body: {exc}"}},
                status_code=400,
            )
        return JSONResponse(preview_document(doc, schema).to_dict())

    @app.post("/compile")
    async def post_compile(request: Request) -> Response:
        try:
            doc = await _json_body(request)
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            return JSONResponse(
                {"error": {"code": "ParseError", "message": f"invalid JSON body: {exc}"}},
                status_code=400,
            )
        try:
            spec = parse_spec_document(doc)
        except ParseError as exc:
            return JSONResponse({"error": exc.to_dict()}, status_code=400)
        try:
            dashboard = build_doc(spec, table, config)
        except ValidationFailure as exc:
            return JSONResponse(exc.report.to_dict(), status_code=422)
        return Response(content=emit_ir(dashboard), media_type="application/json")

    if ui_dir is not None and (ui_dir / "index.html").is_file():
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    else:

        @app.get("/")
        def index() -> HTMLResponse:
            return HTMLResponse(_FALLBACK_PAGE)

    return app


def serve(
    table: DataTable,
    *,
    host: str = "127.0.0.1",
    port: int = 7450,
    ui_dir: Path | None = None,
    config: LayoutConfig | None = None,
) -> None:
    """Run the service until interrupted. The table stays immutable for the
    lifetime of the process."""
    import uvicorn

    uvicorn.run(create_app(table, ui_dir=ui_dir, config=config), host=host, port=port)
