"""Command line entry points: schema, validate, compile, serve."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .data import EngineError, load_csv
from .pipeline import CompileRequest, ValidationFailure, compile_request
from .spec import ParseError, parse_spec, validate_spec

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VALIDATION = 2

#: Default UI bundle location, relative to the working directory.
DEFAULT_UI_DIR = Path("frontend/dist")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quickdash",
        description="Compile data-first dashboard specs into rendered dashboards.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_schema = sub.add_parser("schema", help="print the inferred table schema")
    p_schema.add_argument("data", type=Path, help="CSV file")

    p_validate = sub.add_parser("validate", help="validate a spec against a table")
    p_validate.add_argument("--spec", type=Path, required=True)
    p_validate.add_argument("--data", type=Path, required=True)

    p_compile = sub.add_parser("compile", help="compile a spec into IR and/or HTML")
    p_compile.add_argument("--spec", type=Path, required=True)
    p_compile.add_argument("--data", type=Path, required=True)
    p_compile.add_argument("--out", type=Path, required=True)
    p_compile.add_argument("--format", choices=("ir", "html", "both"), default="ir")

    p_serve = sub.add_parser("serve", help="run the local authoring service")
    p_serve.add_argument("--data", type=Path, required=True)
    p_serve.add_argument("--port", type=int, default=7450)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--ui", type=Path, default=None, help="UI bundle directory")

    return parser


def _cmd_schema(args) -> int:
    table = load_csv(args.data)
    print(json.dumps(table.to_dict(), indent=2))
    return EXIT_OK


def _cmd_validate(args) -> int:
    spec = parse_spec(args.spec.read_text(encoding="utf-8"))
    table = load_csv(args.data)
    _, report = validate_spec(spec, table.schema)
    print(json.dumps(report.to_dict(), indent=2))
    return EXIT_OK if report.ok else EXIT_VALIDATION


def _out_paths(out: Path, fmt: str) -> tuple[Path | None, Path | None]:
    if fmt == "ir":
        return out, None
    if fmt == "html":
        return None, out
    return out.with_name(out.name + ".ir.json"), out.with_name(out.name + ".html")


def _cmd_compile(args) -> int:
    request = CompileRequest(
        spec_text=args.spec.read_text(encoding="utf-8"),
        data_path=args.data,
        output=args.format,
    )
    try:
        result = compile_request(request)
    except ValidationFailure as exc:
        json.dump(exc.report.to_dict(), sys.stderr, indent=2)
        sys.stderr.write("\n")
        return EXIT_VALIDATION
    ir_path, html_path = _out_paths(args.out, args.format)
    if ir_path is not None:
        ir_path.parent.mkdir(parents=True, exist_ok=True)
        ir_path.write_bytes(result.ir)
        print(f"wrote {ir_path}")
    if html_path is not None:
        html_path.parent.mkdir(parents=True, exist_ok=True)
        html_path.write_text(result.html, encoding="utf-8")
        print(f"wrote {html_path}")
    return EXIT_OK


def _cmd_serve(args) -> int:
    from .service import serve

    table = load_csv(args.data)
    ui_dir = args.ui if args.ui is not None else DEFAULT_UI_DIR
    serve(table, host=args.host, port=args.port, ui_dir=ui_dir)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "schema": _cmd_schema,
        "validate": _cmd_validate,
        "compile": _cmd_compile,
        "serve": _cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except ParseError as exc:
        print(f"spec parse error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (EngineError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
