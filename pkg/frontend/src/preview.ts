/** Wireframe rendering of the service's preview skeleton. */

import { escapeHtml } from "./renderer.js";
import type { SkeletonDoc } from "./types.js";

const MARK_GLYPHS: Record<string, string> = {
  line: "╱",
  multi_line: "╱╱",
  bar: "▐▐",
  grouped_bar: "▐▌",
  kpi_card: "#",
};

/** The cell count shown always comes straight from the service skeleton. */
export function renderSkeleton(skeleton: SkeletonDoc): string {
  const parts: string[] = [];
  parts.push(`<p class="preview-count">${skeleton.chartCount} chart(s)</p>`);
  for (const error of skeleton.errors) {
    parts.push(`<p class="preview-error">${escapeHtml(error.message)}</p>`);
  }
  for (const section of skeleton.sections) {
    parts.push(`<div class="preview-section" data-section="${section.index}">`);
    parts.push(`<h3>${escapeHtml(section.title)}</h3>`);
    if (section.errors.length > 0) {
      for (const issue of section.errors) {
        parts.push(
          `<p class="preview-error">${escapeHtml(issue.path)}: ${escapeHtml(issue.message)}</p>`,
        );
      }
      parts.push("</div>");
      continue;
    }
    parts.push(
      `<div class="preview-grid" style="grid-template-columns: repeat(${section.cols}, 1fr)">`,
    );
    for (const cell of section.cells) {
      const glyph = MARK_GLYPHS[cell.mark] ?? "?";
      parts.push(
        `<div class="preview-cell" style="grid-row: ${cell.row + 1}; grid-column: ${cell.col + 1}">` +
          `<span class="preview-mark" title="${escapeHtml(cell.mark)}">${escapeHtml(glyph)}</span>` +
          `<span class="preview-metrics">${escapeHtml(cell.metrics.join(", "))}</span>` +
          `<span class="preview-group">${escapeHtml(cell.group.join(" / ") || "overall")}</span>` +
          "</div>",
      );
    }
    parts.push("</div></div>");
  }
  return parts.join("");
}
