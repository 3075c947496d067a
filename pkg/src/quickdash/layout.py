"""Arrange recommended charts into the sectioned dashboard grid."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .model import DashboardSpec, Section
from .recommend import ChartSpec, Mark


@dataclass(frozen=True)
class LayoutConfig:
    """Grid sizing constants; widths divide evenly among a section's columns."""

    container_width: int = 1200
    cell_height: int = 320
    kpi_height: int = 160


@dataclass(frozen=True)
class SectionGrid:
    """One section of the dashboard: a rectangular grid of chart indices."""

    title: str
    rows: int
    cols: int
    cells: tuple[tuple[int, int, int], ...]  # (row, col, chart index)


@dataclass(frozen=True)
class DashboardDoc:
    """The laid-out dashboard plus the normalized spec it came from."""

    title: str
    sections: tuple[SectionGrid, ...]
    charts: tuple[ChartSpec, ...]
    spec: DashboardSpec
    config: LayoutConfig = field(default_factory=LayoutConfig)

    def cellmap(self) -> dict[tuple[int, int, int], int]:
        return {
            (s, r, c): idx
            for s, grid in enumerate(self.sections)
            for (r, c, idx) in grid.cells
        }

    def chart_size(self, index: int) -> tuple[int, int]:
        chart = self.charts[index]
        grid = self.sections[chart.section_index]
        width = self.config.container_width // max(grid.cols, 1)
        height = self.config.kpi_height if chart.mark is Mark.KPI_CARD else self.config.cell_height
        return width, height


def grid_shape(hints: Iterable[tuple[int, int]]) -> tuple[int, int]:
    """Grid extent covering all (row, col) hints."""
    rows = cols = 0
    for r, c in hints:
        rows = max(rows, r + 1)
        cols = max(cols, c + 1)
    return rows, cols


def section_title(section: Section) -> str:
    """Authored title, or an auto-generated header naming metrics and groups."""
    if section.title:
        return section.title
    metrics = ", ".join(m.label for m in section.metrics)
    if not section.dimension_groups:
        return f"Metrics: {metrics}"
    groups = " | ".join(g.label for g in section.dimension_groups)
    return f"Metrics: {metrics} — by {groups}"


def layout(
    charts: Sequence[ChartSpec],
    spec: DashboardSpec,
    config: LayoutConfig | None = None,
) -> DashboardDoc:
    """Place every chart at its hinted cell, section by section.

    Repeat sections come out as a metrics-by-groups grid (metric per row),
    Layer sections as a single row, so each grid column holds one dimension
    group and invites column-wise metric comparison.
    """
    config = config or LayoutConfig()
    grids = []
    for s, section in enumerate(spec.sections):
        indexed = [(i, c) for i, c in enumerate(charts) if c.section_index == s]
        rows, cols = grid_shape((c.row_hint, c.col_hint) for _, c in indexed)
        cells = tuple((c.row_hint, c.col_hint, i) for i, c in indexed)
        occupied = {(r, c) for r, c, _ in cells}
        if len(occupied) != len(cells):
            raise ValueError(f"section {s} places two charts in one cell")
        if len(cells) != rows * cols:
            raise ValueError(f"section {s} grid is not rectangular")
        grids.append(SectionGrid(section_title(section), rows, cols, cells))
    placed = sum(len(g.cells) for g in grids)
    if placed != len(charts):
        raise ValueError("every chart must land in exactly one cell")
    return DashboardDoc(
        title=spec.title or "Dashboard",
        sections=tuple(grids),
        charts=tuple(charts),
        spec=spec,
        config=config,
    )
