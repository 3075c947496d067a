/** Draft dashboard state and its pure editing operations.
 *
 * The draft mirrors the external spec document one-to-one so serialization
 * is trivial and the service's parser round-trips it unchanged. All editing
 * functions return a new draft; the UI re-renders from scratch.
 */

import type {
  Aggregation,
  ColumnType,
  SchemaColumn,
  SchemaDoc,
  SpecDoc,
  SpecSectionNode,
} from "./types.js";

export interface MetricDraft {
  /** null means the COUNT(*) row-count metric */
  field: string | null;
  agg: Aggregation;
}

export interface GroupDraft {
  primary: string;
  secondary: string | null;
}

export interface SectionDraft {
  metrics: MetricDraft[];
  groups: GroupDraft[];
  layout: "Layer" | "Repeat";
  title?: string;
}

export interface Draft {
  sections: SectionDraft[];
  title?: string;
}

export const MAX_GROUP_FIELDS = 2;

/** Aggregations offered by the metric picker for a quantitative column. */
export const NUMERIC_AGG_CHOICES: Aggregation[] = ["SUM", "MEAN", "MIN", "MAX", "COUNT"];

export function metricColumns(schema: SchemaDoc): SchemaColumn[] {
  return schema.columns.filter((c) => c.type === "quantitative");
}

export function dimensionColumns(schema: SchemaDoc): SchemaColumn[] {
  return schema.columns.filter((c) => c.type !== "quantitative");
}

export function metricLabel(metric: MetricDraft): string {
  return metric.field === null ? "COUNT(*)" : `${metric.field} (${metric.agg})`;
}

export function emptyDraft(): Draft {
  return { sections: [{ metrics: [], groups: [], layout: "Repeat" }] };
}

function cloned(draft: Draft): Draft {
  return JSON.parse(JSON.stringify(draft)) as Draft;
}

export function addSection(draft: Draft): Draft {
  const next = cloned(draft);
  next.sections.push({ metrics: [], groups: [], layout: "Repeat" });
  return next;
}

export function removeSection(draft: Draft, section: number): Draft {
  const next = cloned(draft);
  next.sections.splice(section, 1);
  return next;
}

export function addMetric(draft: Draft, section: number, metric: MetricDraft): Draft {
  const next = cloned(draft);
  next.sections[section].metrics.push({ ...metric });
  return next;
}

export function removeMetric(draft: Draft, section: number, index: number): Draft {
  const next = cloned(draft);
  next.sections[section].metrics.splice(index, 1);
  return next;
}

export function setAggregation(
  draft: Draft,
  section: number,
  index: number,
  agg: Aggregation,
): Draft {
  const next = cloned(draft);
  next.sections[section].metrics[index].agg = agg;
  return next;
}

export function addGroup(draft: Draft, section: number, primary: string): Draft {
  const next = cloned(draft);
  next.sections[section].groups.push({ primary, secondary: null });
  return next;
}

export function removeGroup(draft: Draft, section: number, index: number): Draft {
  const next = cloned(draft);
  next.sections[section].groups.splice(index, 1);
  return next;
}

export function groupSize(group: GroupDraft): number {
  return group.secondary === null ? 1 : 2;
}

/** Groups are capped at two fields; the UI disables the control at the cap. */
export function canAddField(group: GroupDraft): boolean {
  return groupSize(group) < MAX_GROUP_FIELDS;
}

export interface EditResult {
  draft: Draft;
  error?: string;
}

export function setSecondaryField(
  draft: Draft,
  section: number,
  index: number,
  field: string | null,
): EditResult {
  const group = draft.sections[section].groups[index];
  if (field !== null && field === group.primary) {
    return { draft, error: "secondary field must differ from the primary field" };
  }
  const next = cloned(draft);
  next.sections[section].groups[index].secondary = field;
  return { draft: next };
}

export function toggleLayout(draft: Draft, section: number): Draft {
  const next = cloned(draft);
  const current = next.sections[section].layout;
  next.sections[section].layout = current === "Layer" ? "Repeat" : "Layer";
  return next;
}

export function setSectionTitle(draft: Draft, section: number, title: string): Draft {
  const next = cloned(draft);
  if (title) {
    next.sections[section].title = title;
  } else {
    delete next.sections[section].title;
  }
  return next;
}

/** Serialize the draft into the exact document the service parses. */
export function toSpecDocument(draft: Draft): SpecDoc {
  const sections: SpecSectionNode[] = draft.sections.map((section) => {
    const node: SpecSectionNode = {
      Metrics: section.metrics.map((m) =>
        m.field === null ? { agg: "COUNT(*)" as Aggregation } : { field: m.field, agg: m.agg },
      ),
      DimensionGroups: section.groups.map((g) =>
        g.secondary === null
          ? { PrimaryField: g.primary }
          : { PrimaryField: g.primary, SecondaryField: g.secondary },
      ),
      MetricLayout: section.layout,
    };
    if (section.title) node.Title = section.title;
    return node;
  });
  const doc: SpecDoc = { Sections: sections };
  if (draft.title) doc.Title = draft.title;
  return doc;
}

/** Load a previously exported draft document back into editable state. */
export function fromSpecDocument(doc: SpecDoc): Draft {
  return {
    title: doc.Title,
    sections: doc.Sections.map((section) => ({
      title: section.Title,
      layout: section.MetricLayout ?? "Repeat",
      metrics: (section.Metrics ?? []).map((m) => ({
        field: m.agg === "COUNT(*)" ? null : (m.field ?? null),
        agg: m.agg,
      })),
      groups: (section.DimensionGroups ?? []).map((g) => ({
        primary: g.PrimaryField,
        secondary: g.SecondaryField ?? null,
      })),
    })),
  };
}

export function defaultAggregationFor(type: ColumnType): Aggregation {
  return type === "quantitative" ? "SUM" : "COUNT";
}
