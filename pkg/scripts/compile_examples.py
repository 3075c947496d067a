#!/usr/bin/env python3
"""Compile the bundled example specs against the superstore fixture.

Writes IR and HTML artifacts for each example into ./out so the rendered
dashboards can be opened in a browser.
"""

from __future__ import annotations

from pathlib import Path

from quickdash import compile_text, emit_html, emit_ir, load_csv

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "tests" / "data"
OUT = ROOT / "out"


def main() -> None:
    table = load_csv(DATA / "superstore.csv")
    OUT.mkdir(exist_ok=True)
    for spec_path in sorted(DATA.glob("example*.json")):
        doc = compile_text(spec_path.read_text(encoding="utf-8"), table)
        name = spec_path.stem
        (OUT / f"{name}.ir.json").write_bytes(emit_ir(doc))
        (OUT / f"{name}.html").write_text(emit_html(doc), encoding="utf-8")
        print(f"{name}: {len(doc.charts)} charts -> out/{name}.html")


if __name__ == "__main__":
    main()
