/** Client-side mirror of the service's mark-compatibility rules, so the
 * override menu can flag impossible switches without a round trip. */

import type { IRChart, Mark } from "./types.js";

export interface ChartStructure {
  hasX: boolean;
  xTemporal: boolean;
  hasSeries: boolean;
}

export function chartStructure(chart: IRChart): ChartStructure {
  const x = chart.encodings.find((e) => e.channel === "x");
  const color = chart.encodings.find((e) => e.channel === "color");
  return {
    hasX: x !== undefined,
    xTemporal: x !== undefined && x.fieldType === "temporal",
    hasSeries: color !== undefined,
  };
}

/** Marks that can draw the chart's fields without dropping any of them. */
export function compatibleMarks(chart: IRChart): Mark[] {
  const { hasX, xTemporal, hasSeries } = chartStructure(chart);
  if (!hasX) return ["kpi_card"];
  if (hasSeries) return xTemporal ? ["grouped_bar", "multi_line"] : ["grouped_bar"];
  return xTemporal ? ["bar", "line"] : ["bar"];
}

export const ALL_MARKS: Mark[] = ["line", "bar", "grouped_bar", "multi_line", "kpi_card"];

/** Human-readable reason a mark cannot be applied, or null when it can. */
export function incompatibilityReason(chart: IRChart, mark: Mark): string | null {
  if (compatibleMarks(chart).includes(mark)) return null;
  const { hasX, xTemporal, hasSeries } = chartStructure(chart);
  if ((mark === "line" || mark === "multi_line") && !xTemporal) {
    return hasX
      ? `${mark} requires an ordered (temporal) x axis`
      : `${mark} requires an x field`;
  }
  if (mark === "kpi_card") return "kpi_card cannot encode dimension fields";
  if ((mark === "grouped_bar" || mark === "multi_line") && !hasSeries) {
    return `${mark} requires a series (color) field`;
  }
  if ((mark === "bar" || mark === "line") && hasSeries) {
    return `${mark} cannot encode the series field`;
  }
  return `${mark} requires an x field`;
}
