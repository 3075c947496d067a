/** Pure chart-IR renderer: IR document in, HTML string out.
 *
 * String-building keeps it trivially testable in node and lets the page
 * re-render wholesale when a mark override or drag reorder changes state.
 */

import type { IRChart, IRDoc, IREncoding, Mark } from "./types.js";

const PALETTE = [
  "#4c78a8", "#f58518", "#54a24b", "#e45756", "#72b7b2",
  "#eeca3b", "#b279a2", "#ff9da6", "#9d755d", "#bab0ac",
];

const MARGIN = { top: 8, right: 12, bottom: 34, left: 48 };

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

interface Point {
  x: string | number;
  y: number;
}

interface Series {
  name: string;
  points: Point[];
}

interface Panel {
  facetValue: string | number | null;
  series: Series[];
}

function findEncoding(chart: IRChart, channel: string): IREncoding | undefined {
  return chart.encodings.find((e) => e.channel === channel);
}

function distinct<T>(values: T[]): T[] {
  const seen = new Set<string>();
  const out: T[] = [];
  for (const value of values) {
    const key = String(value);
    if (!seen.has(key)) {
      seen.add(key);
      out.push(value);
    }
  }
  return out;
}

/** Normalize any chart into faceted panels of named point series. */
export function extractPanels(chart: IRChart): Panel[] {
  const data = chart.data;
  const x = findEncoding(chart, "x");
  const color = findEncoding(chart, "color");
  const facet = findEncoding(chart, "column-facet");
  const xIdx = x?.field !== undefined ? data.fields.indexOf(x.field) : -1;
  const facetIdx = facet?.field !== undefined ? data.fields.indexOf(facet.field) : -1;
  const metricBase = data.fields.length;

  const facetValues: (string | number | null)[] =
    facetIdx >= 0 ? distinct(data.rows.map((r) => r[facetIdx])) : [null];

  return facetValues.map((facetValue) => {
    const rows =
      facetIdx >= 0 ? data.rows.filter((r) => r[facetIdx] === facetValue) : data.rows;
    let series: Series[];
    if (color?.metrics) {
      series = data.metrics.map((label, mi) => ({
        name: label,
        points: rows.map((r) => ({ x: r[xIdx], y: Number(r[metricBase + mi]) })),
      }));
    } else if (color?.field !== undefined) {
      const cIdx = data.fields.indexOf(color.field);
      series = distinct(data.rows.map((r) => r[cIdx])).map((value) => ({
        name: String(value),
        points: rows
          .filter((r) => r[cIdx] === value)
          .map((r) => ({ x: r[xIdx], y: Number(r[metricBase]) })),
      }));
    } else {
      series = [
        {
          name: data.metrics[0] ?? "",
          points: rows.map((r) => ({ x: r[xIdx], y: Number(r[metricBase]) })),
        },
      ];
    }
    return { facetValue, series };
  });
}

export function niceTicks(lo: number, hi: number, count: number): number[] {
  const span = hi - lo;
  if (span <= 0) return [lo];
  let step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const err = span / count / step;
  if (err >= 7.5) step *= 10;
  else if (err >= 3.5) step *= 5;
  else if (err >= 1.5) step *= 2;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-9; v += step) {
    ticks.push(Math.abs(v) < 1e-12 ? 0 : v);
  }
  return ticks;
}

export function formatNumber(v: number): string {
  if (Math.abs(v) >= 1e6) return `${(v / 1e6).toFixed(1).replace(/\.0$/, "")}M`;
  if (Math.abs(v) >= 1e3) return `${(v / 1e3).toFixed(1).replace(/\.0$/, "")}k`;
  if (Number.isInteger(v)) return String(v);
  return v.toFixed(2).replace(/0+$/, "").replace(/\.$/, "");
}

export function formatTime(iso: string, unit: string | undefined): string {
  if (unit === "year") return iso.slice(0, 4);
  if (unit === "month") return iso.slice(0, 7);
  if (unit === "hour") return `${iso.slice(5, 13).replace("T", " ")}h`;
  return iso.slice(0, 10);
}

function xLabel(value: string | number, xEnc: IREncoding | undefined): string {
  if (xEnc?.fieldType === "temporal") return formatTime(String(value), xEnc.timeUnit);
  return String(value);
}

function truncate(text: string, max = 12): string {
  return text.length > max ? `${text.slice(0, max - 1)}…` : text;
}

function colorScale(names: string[]): (name: string) => string {
  return (name) => {
    const index = names.indexOf(name);
    return PALETTE[(index < 0 ? 0 : index) % PALETTE.length];
  };
}

interface Plot {
  left: number;
  right: number;
  top: number;
  bottom: number;
}

function yScale(plot: Plot, domain: [number, number]): (v: number) => number {
  const span = domain[1] - domain[0] || 1;
  return (v) => plot.bottom - ((v - domain[0]) / span) * (plot.bottom - plot.top);
}

function axesSvg(plot: Plot, domain: [number, number]): string {
  const y = yScale(plot, domain);
  const parts: string[] = ['<g class="axis">'];
  for (const tick of niceTicks(domain[0], domain[1], 4)) {
    const py = y(tick).toFixed(1);
    parts.push(`<line x1="${plot.left}" x2="${plot.right}" y1="${py}" y2="${py}"></line>`);
    parts.push(
      `<text x="${plot.left - 6}" y="${Number(py) + 3}" text-anchor="end">` +
        `${escapeHtml(formatNumber(tick))}</text>`,
    );
  }
  const zero = y(0).toFixed(1);
  parts.push(
    `<line x1="${plot.left}" x2="${plot.right}" y1="${zero}" y2="${zero}" stroke="#9aa0ae"></line>`,
  );
  parts.push("</g>");
  return parts.join("");
}

function xLabelsSvg(
  plot: Plot,
  entries: { value: string | number; px: number }[],
  xEnc: IREncoding | undefined,
): string {
  const step = Math.max(1, Math.ceil(entries.length / 7));
  const parts: string[] = ['<g class="axis">'];
  entries.forEach((entry, i) => {
    if (i % step !== 0 && i !== entries.length - 1) return;
    parts.push(
      `<text x="${entry.px.toFixed(1)}" y="${plot.bottom + 14}" text-anchor="middle">` +
        `${escapeHtml(truncate(xLabel(entry.value, xEnc)))}</text>`,
    );
  });
  parts.push("</g>");
  return parts.join("");
}

function panelSvg(
  plot: Plot,
  panel: Panel,
  chart: IRChart,
  mark: Mark,
  colorOf: (name: string) => string,
): string {
  const xEnc = findEncoding(chart, "x");
  const yEnc = findEncoding(chart, "y");
  const domain = yEnc?.domain ?? [0, 1];
  const y = yScale(plot, domain);
  const parts: string[] = [axesSvg(plot, domain)];
  const lineMark = mark === "line" || mark === "multi_line";
  const xValues = distinct(panel.series.flatMap((s) => s.points.map((p) => p.x)));

  if (lineMark && xEnc?.fieldType === "temporal") {
    const times = xValues.map((v) => Date.parse(String(v)));
    const tmin = Math.min(...times);
    const tmax = Math.max(...times);
    const px = (v: string | number) => {
      const t = tmax === tmin ? 0.5 : (Date.parse(String(v)) - tmin) / (tmax - tmin);
      return plot.left + t * (plot.right - plot.left);
    };
    for (const series of panel.series) {
      const d = series.points
        .map((p, i) => `${i ? "L" : "M"}${px(p.x).toFixed(1)},${y(p.y).toFixed(1)}`)
        .join("");
      if (d) {
        parts.push(
          `<path d="${d}" fill="none" stroke="${colorOf(series.name)}" stroke-width="1.8"></path>`,
        );
      }
      for (const p of series.points) {
        parts.push(
          `<circle cx="${px(p.x).toFixed(1)}" cy="${y(p.y).toFixed(1)}" r="2" ` +
            `fill="${colorOf(series.name)}"></circle>`,
        );
      }
    }
    parts.push(xLabelsSvg(plot, xValues.map((v) => ({ value: v, px: px(v) })), xEnc));
  } else {
    const band = (plot.right - plot.left) / Math.max(xValues.length, 1);
    const center = (i: number) => plot.left + band * (i + 0.5);
    const position = new Map(xValues.map((v, i) => [String(v), i]));
    if (lineMark) {
      for (const series of panel.series) {
        const d = series.points
          .map(
            (p, i) =>
              `${i ? "L" : "M"}${center(position.get(String(p.x)) ?? 0).toFixed(1)},` +
              `${y(p.y).toFixed(1)}`,
          )
          .join("");
        if (d) {
          parts.push(
            `<path d="${d}" fill="none" stroke="${colorOf(series.name)}" stroke-width="1.8"></path>`,
          );
        }
      }
    } else {
      const inner = (band * 0.8) / panel.series.length;
      panel.series.forEach((series, si) => {
        for (const p of series.points) {
          const i = position.get(String(p.x)) ?? 0;
          const x0 = plot.left + band * i + band * 0.1 + inner * si;
          const top = y(Math.max(0, p.y));
          const height = Math.abs(y(p.y) - y(0));
          parts.push(
            `<rect x="${x0.toFixed(1)}" y="${top.toFixed(1)}" ` +
              `width="${Math.max(inner - 1, 1).toFixed(1)}" height="${height.toFixed(1)}" ` +
              `fill="${colorOf(series.name)}"></rect>`,
          );
        }
      });
    }
    parts.push(xLabelsSvg(plot, xValues.map((v, i) => ({ value: v, px: center(i) })), xEnc));
  }
  return parts.join("");
}

function kpiHtml(chart: IRChart): string {
  const base = chart.data.fields.length;
  const parts = [`<p class="chart-title">${escapeHtml(chart.title)}</p>`];
  chart.data.metrics.forEach((label, i) => {
    const value = chart.data.rows.length ? Number(chart.data.rows[0][base + i]) : 0;
    parts.push(`<div class="kpi-value">${escapeHtml(formatNumber(value))}</div>`);
    parts.push(`<div class="kpi-label">${escapeHtml(label)}</div>`);
  });
  return parts.join("");
}

/** Render one chart, honoring an optional mark override. */
export function renderChart(chart: IRChart, markOverride?: Mark): string {
  const mark = markOverride ?? chart.mark;
  if (mark === "kpi_card") return kpiHtml(chart);

  const panels = extractPanels(chart);
  const width = chart.width - 26;
  const height = chart.height - 60;
  const panelWidth = Math.floor(width / panels.length);
  const facet = findEncoding(chart, "column-facet");
  const names = panels[0]?.series.map((s) => s.name) ?? [];
  const colorOf = colorScale(names);

  const parts = [`<p class="chart-title">${escapeHtml(chart.title)}</p>`];
  parts.push(`<svg width="${width}" height="${height}">`);
  panels.forEach((panel, pi) => {
    const plot: Plot = {
      left: MARGIN.left,
      right: panelWidth - MARGIN.right,
      top: MARGIN.top + (facet ? 14 : 0),
      bottom: height - MARGIN.bottom,
    };
    parts.push(`<g transform="translate(${pi * panelWidth},0)">`);
    if (facet) {
      const label = `${facet.field}: ${xLabel(panel.facetValue ?? "", facet)}`;
      parts.push(
        `<text x="${(plot.left + plot.right) / 2}" y="12" text-anchor="middle" ` +
          `font-weight="600">${escapeHtml(label)}</text>`,
      );
    }
    parts.push(panelSvg(plot, panel, chart, mark, colorOf));
    parts.push("</g>");
  });
  parts.push("</svg>");

  if (names.length > 1) {
    parts.push('<div class="legend">');
    for (const name of names) {
      parts.push(
        `<span><span class="swatch" style="background:${colorOf(name)}"></span>` +
          `${escapeHtml(name)}</span>`,
      );
    }
    parts.push("</div>");
  }
  const dropped = chart.data.droppedRows + chart.data.droppedCategories;
  if (dropped > 0) {
    const notes: string[] = [];
    if (chart.data.droppedRows) notes.push(`${chart.data.droppedRows} rows with null keys dropped.`);
    if (chart.data.droppedCategories) {
      notes.push(
        `showing largest ${chart.data.rows.length} categories ` +
          `(${chart.data.droppedCategories} hidden).`,
      );
    }
    parts.push(`<p class="chart-note">${escapeHtml(notes.join(" "))}</p>`);
  }
  return parts.join("");
}

export interface RenderOptions {
  /** chart index -> replacement mark (post-hoc overrides) */
  markOverrides?: Record<number, Mark>;
  /** per-section cell permutation from drag reordering: section -> chart order */
  cellOrder?: Record<number, number[]>;
}

/** Render the whole dashboard document to HTML. */
export function renderDashboard(ir: IRDoc, options: RenderOptions = {}): string {
  const overrides = options.markOverrides ?? {};
  const parts = [`<h1 class="dash-title">${escapeHtml(ir.title)}</h1>`];
  ir.sections.forEach((section, si) => {
    parts.push('<section class="dash-section">');
    parts.push(`<h2>${escapeHtml(section.title)}</h2>`);
    parts.push(
      `<div class="dash-grid" data-section="${si}" ` +
        `style="grid-template-columns: repeat(${section.cols}, 1fr)">`,
    );
    const order = options.cellOrder?.[si];
    const cells = order
      ? order.map((chartIndex, position) => ({
          row: section.cells[position].row,
          col: section.cells[position].col,
          chart: chartIndex,
        }))
      : section.cells;
    for (const cell of cells) {
      parts.push(
        `<div class="dash-cell" draggable="true" data-chart="${cell.chart}" ` +
          `data-section="${si}" style="grid-row: ${cell.row + 1}; grid-column: ${cell.col + 1}">`,
      );
      parts.push(renderChart(ir.charts[cell.chart], overrides[cell.chart]));
      parts.push("</div>");
    }
    parts.push("</div></section>");
  });
  return parts.join("");
}
