import { describe, expect, it } from "vitest";

import * as state from "../src/state.js";
import type { SchemaDoc } from "../src/types.js";

const schema: SchemaDoc = {
  rowCount: 100,
  columns: [
    { name: "Sales", type: "quantitative", cardinality: 100, nullCount: 0 },
    { name: "Shipping Cost", type: "quantitative", cardinality: 99, nullCount: 0 },
    { name: "Ship Date", type: "temporal", cardinality: 90, nullCount: 0 },
    { name: "Region", type: "categorical", cardinality: 4, nullCount: 0 },
    { name: "Category", type: "categorical", cardinality: 3, nullCount: 0 },
  ],
};

function example1Draft(): state.Draft {
  let draft = state.emptyDraft();
  draft = state.addMetric(draft, 0, { field: "Sales", agg: "SUM" });
  draft = state.addMetric(draft, 0, { field: "Shipping Cost", agg: "SUM" });
  draft = state.addGroup(draft, 0, "Ship Date");
  draft = state.addGroup(draft, 0, "Region");
  return draft;
}

describe("column pickers", () => {
  it("offers quantitative columns as metrics and the rest as dimensions", () => {
    expect(state.metricColumns(schema).map((c) => c.name)).toEqual([
      "Sales",
      "Shipping Cost",
    ]);
    expect(state.dimensionColumns(schema).map((c) => c.name)).toEqual([
      "Ship Date",
      "Region",
      "Category",
    ]);
  });
});

describe("draft editing", () => {
  it("builds the two-metric two-group draft", () => {
    const draft = example1Draft();
    expect(draft.sections[0].metrics).toHaveLength(2);
    expect(draft.sections[0].groups).toHaveLength(2);
    expect(draft.sections[0].layout).toBe("Repeat");
  });

  it("editing never mutates the previous draft", () => {
    const draft = example1Draft();
    const next = state.toggleLayout(draft, 0);
    expect(draft.sections[0].layout).toBe("Repeat");
    expect(next.sections[0].layout).toBe("Layer");
    expect(state.toggleLayout(next, 0).sections[0].layout).toBe("Repeat");
  });

  it("caps dimension groups at two fields", () => {
    let draft = state.emptyDraft();
    draft = state.addGroup(draft, 0, "Ship Date");
    const group = draft.sections[0].groups[0];
    expect(state.canAddField(group)).toBe(true);
    const grown = state.setSecondaryField(draft, 0, 0, "Region");
    expect(grown.error).toBeUndefined();
    const full = grown.draft.sections[0].groups[0];
    expect(state.groupSize(full)).toBe(2);
    expect(state.canAddField(full)).toBe(false);
  });

  it("rejects a secondary field equal to the primary", () => {
    let draft = state.emptyDraft();
    draft = state.addGroup(draft, 0, "Region");
    const result = state.setSecondaryField(draft, 0, 0, "Region");
    expect(result.error).toMatch(/differ/);
    expect(result.draft.sections[0].groups[0].secondary).toBeNull();
  });

  it("clears the secondary field back to a one-field group", () => {
    let draft = state.emptyDraft();
    draft = state.addGroup(draft, 0, "Region");
    draft = state.setSecondaryField(draft, 0, 0, "Category").draft;
    draft = state.setSecondaryField(draft, 0, 0, null).draft;
    expect(state.groupSize(draft.sections[0].groups[0])).toBe(1);
  });

  it("removing every metric leaves an empty list for the COUNT(*) default", () => {
    let draft = example1Draft();
    draft = state.removeMetric(draft, 0, 1);
    draft = state.removeMetric(draft, 0, 0);
    expect(draft.sections[0].metrics).toEqual([]);
    expect(state.toSpecDocument(draft).Sections[0].Metrics).toEqual([]);
  });
});

describe("spec document serialization", () => {
  it("matches the wire format the service parses", () => {
    const doc = state.toSpecDocument(example1Draft());
    expect(doc).toEqual({
      Sections: [
        {
          Metrics: [
            { field: "Sales", agg: "SUM" },
            { field: "Shipping Cost", agg: "SUM" },
          ],
          DimensionGroups: [{ PrimaryField: "Ship Date" }, { PrimaryField: "Region" }],
          MetricLayout: "Repeat",
        },
      ],
    });
  });

  it("serializes COUNT(*) without a field and secondary fields when present", () => {
    let draft = state.emptyDraft();
    draft = state.addMetric(draft, 0, { field: null, agg: "COUNT(*)" });
    draft = state.addGroup(draft, 0, "Region");
    draft = state.setSecondaryField(draft, 0, 0, "Category").draft;
    const doc = state.toSpecDocument(draft);
    expect(doc.Sections[0].Metrics).toEqual([{ agg: "COUNT(*)" }]);
    expect(doc.Sections[0].DimensionGroups).toEqual([
      { PrimaryField: "Region", SecondaryField: "Category" },
    ]);
  });

  it("round-trips through export and import", () => {
    const draft = example1Draft();
    const restored = state.fromSpecDocument(state.toSpecDocument(draft));
    expect(state.toSpecDocument(restored)).toEqual(state.toSpecDocument(draft));
  });

  it("labels metrics the way dashboards title them", () => {
    expect(state.metricLabel({ field: "Sales", agg: "SUM" })).toBe("Sales (SUM)");
    expect(state.metricLabel({ field: null, agg: "COUNT(*)" })).toBe("COUNT(*)");
  });
});
