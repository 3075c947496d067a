/** Wire types for the quickdash service endpoints. */

export type ColumnType = "quantitative" | "categorical" | "temporal";

export interface SchemaColumn {
  name: string;
  type: ColumnType;
  cardinality: number;
  nullCount: number;
}

export interface SchemaDoc {
  rowCount: number;
  columns: SchemaColumn[];
}

export type Aggregation = "SUM" | "MEAN" | "MIN" | "MAX" | "COUNT" | "COUNT(*)";

export const NUMERIC_AGGREGATIONS: Aggregation[] = ["SUM", "MEAN", "MIN", "MAX"];

/** External spec document, exactly as the service parses it. */
export interface SpecMetricNode {
  field?: string;
  agg: Aggregation;
}

export interface SpecGroupNode {
  PrimaryField: string;
  SecondaryField?: string;
}

export interface SpecSectionNode {
  Metrics: SpecMetricNode[];
  DimensionGroups: SpecGroupNode[];
  MetricLayout: "Layer" | "Repeat";
  Title?: string;
}

export interface SpecDoc {
  Sections: SpecSectionNode[];
  Title?: string;
}

export interface IssueDoc {
  code: string;
  path: string;
  message: string;
}

export interface PreviewCellDoc {
  row: number;
  col: number;
  metrics: string[];
  group: string[];
  mark: Mark;
}

export interface PreviewSectionDoc {
  index: number;
  title: string;
  rows: number;
  cols: number;
  chartCount: number;
  cells: PreviewCellDoc[];
  errors: IssueDoc[];
}

export interface SkeletonDoc {
  sections: PreviewSectionDoc[];
  chartCount: number;
  errors: { code: string; message: string; path?: string }[];
  warnings: IssueDoc[];
}

export type Mark = "line" | "bar" | "grouped_bar" | "multi_line" | "kpi_card";

export type Channel = "x" | "y" | "color" | "column-facet";

export interface IREncoding {
  channel: Channel;
  title: string;
  field?: string;
  fieldType?: ColumnType;
  timeUnit?: "year" | "month" | "week" | "day" | "hour";
  metrics?: string[];
  domain?: [number, number];
}

export interface IRChartData {
  fields: string[];
  metrics: string[];
  rows: (string | number)[][];
  droppedRows: number;
  droppedCategories: number;
  timeUnit?: string;
}

export interface IRChart {
  mark: Mark;
  title: string;
  section: number;
  row: number;
  col: number;
  width: number;
  height: number;
  editable: boolean;
  encodings: IREncoding[];
  data: IRChartData;
}

export interface IRSection {
  title: string;
  rows: number;
  cols: number;
  cells: { row: number; col: number; chart: number }[];
}

export interface IRDoc {
  irVersion: number;
  generator: string;
  title: string;
  sections: IRSection[];
  charts: IRChart[];
  spec: SpecDoc;
}

export interface ValidationReportDoc {
  errors: IssueDoc[];
  warnings: IssueDoc[];
}
