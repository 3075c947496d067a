/** DOM wiring: the authoring modal on the left, live preview / rendered
 * dashboard on the right. State lives in a single Draft; every edit
 * re-renders the controls and schedules a debounced preview call. */

import { CompileRejected, getSchema, postCompile, postPreview } from "./api.js";
import { compatibleMarks, incompatibilityReason, ALL_MARKS } from "./marks.js";
import { renderSkeleton } from "./preview.js";
import { renderDashboard } from "./renderer.js";
import { createSequencer, type Sequencer } from "./sequencer.js";
import * as state from "./state.js";
import type { Draft } from "./state.js";
import type { IRDoc, Mark, SchemaDoc, SkeletonDoc, SpecDoc } from "./types.js";

interface App {
  schema: SchemaDoc;
  draft: Draft;
  skeleton: SkeletonDoc | null;
  compiled: IRDoc | null;
  markOverrides: Record<number, Mark>;
  cellOrder: Record<number, number[]>;
  sequencer: Sequencer<SpecDoc>;
  notice: string | null;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function option(value: string, label = value): HTMLOptionElement {
  const node = document.createElement("option");
  node.value = value;
  node.textContent = label;
  return node;
}

export async function boot(root: HTMLElement): Promise<void> {
  const schema = await getSchema();
  const app: App = {
    schema,
    draft: state.emptyDraft(),
    skeleton: null,
    compiled: null,
    markOverrides: {},
    cellOrder: {},
    notice: null,
    sequencer: createSequencer<SpecDoc, SkeletonDoc>({
      send: (spec) => postPreview(spec),
      onResult: (skeleton) => {
        app.skeleton = skeleton;
        renderRight(app);
      },
      onError: () => {
        app.notice = "preview request failed";
        renderRight(app);
      },
    }),
  };

  root.innerHTML = "";
  const editor = el("div", "pane editor");
  editor.id = "editor";
  const preview = el("div", "pane preview-pane");
  preview.id = "preview";
  root.appendChild(editor);
  root.appendChild(preview);

  renderEditor(app);
  schedulePreview(app);
}

function update(app: App, draft: Draft): void {
  app.draft = draft;
  app.compiled = null; // edits invalidate the created dashboard
  app.markOverrides = {};
  app.cellOrder = {};
  renderEditor(app);
  schedulePreview(app);
}

function schedulePreview(app: App): void {
  app.sequencer.request(state.toSpecDocument(app.draft));
}

// ---------------------------------------------------------------------------
// Left pane: authoring controls

function renderEditor(app: App): void {
  const editor = document.getElementById("editor");
  if (!editor) return;
  editor.innerHTML = "";
  editor.appendChild(el("h1", undefined, "New dashboard"));

  app.draft.sections.forEach((section, si) => {
    editor.appendChild(sectionCard(app, section, si));
  });

  const addSection = el("button", "add-section", "+ add section");
  addSection.onclick = () => update(app, state.addSection(app.draft));
  editor.appendChild(addSection);

  const actions = el("div", "actions");
  const create = el("button", "create", "Create dashboard");
  create.onclick = () => void createDashboard(app);
  actions.appendChild(create);
  actions.appendChild(exportButton(app));
  actions.appendChild(importControl(app));
  editor.appendChild(actions);
}

function sectionCard(app: App, section: state.SectionDraft, si: number): HTMLElement {
  const card = el("fieldset", "section-card");
  const legend = el("legend", undefined, section.title || `Section ${si + 1}`);
  card.appendChild(legend);

  // metrics
  const metricsBox = el("div", "metrics");
  metricsBox.appendChild(el("h3", undefined, "Metrics"));
  if (section.metrics.length === 0) {
    metricsBox.appendChild(
      el("p", "hint", "No metrics: COUNT(*) will be used as the default."),
    );
  }
  section.metrics.forEach((metric, mi) => {
    const row = el("div", "metric-row");
    row.appendChild(el("span", "field-name", metric.field ?? "COUNT(*)"));
    if (metric.field !== null) {
      const agg = document.createElement("select");
      agg.title = "aggregation";
      for (const token of state.NUMERIC_AGG_CHOICES) agg.appendChild(option(token));
      agg.value = metric.agg;
      agg.onchange = () =>
        update(app, state.setAggregation(app.draft, si, mi, agg.value as never));
      row.appendChild(agg);
    }
    const remove = el("button", "remove", "remove");
    remove.onclick = () => update(app, state.removeMetric(app.draft, si, mi));
    row.appendChild(remove);
    metricsBox.appendChild(row);
  });
  const addMetric = document.createElement("select");
  addMetric.className = "add-metric";
  addMetric.appendChild(option("", "+ add metric"));
  for (const column of state.metricColumns(app.schema)) {
    addMetric.appendChild(option(column.name));
  }
  addMetric.appendChild(option("COUNT(*)"));
  addMetric.onchange = () => {
    if (!addMetric.value) return;
    const metric =
      addMetric.value === "COUNT(*)"
        ? { field: null, agg: "COUNT(*)" as const }
        : { field: addMetric.value, agg: "SUM" as const };
    update(app, state.addMetric(app.draft, si, metric));
  };
  metricsBox.appendChild(addMetric);
  card.appendChild(metricsBox);

  // dimension groups
  const groupsBox = el("div", "groups");
  groupsBox.appendChild(el("h3", undefined, "Dimension groups"));
  section.groups.forEach((group, gi) => {
    groupsBox.appendChild(groupRow(app, si, gi, group));
  });
  const addGroup = document.createElement("select");
  addGroup.className = "add-group";
  addGroup.appendChild(option("", "+ add dimension group"));
  for (const column of state.dimensionColumns(app.schema)) {
    addGroup.appendChild(option(column.name));
  }
  addGroup.onchange = () => {
    if (addGroup.value) update(app, state.addGroup(app.draft, si, addGroup.value));
  };
  groupsBox.appendChild(addGroup);
  card.appendChild(groupsBox);

  // layout toggle
  const layoutRow = el("div", "layout-row");
  const toggle = el("button", "layout-toggle", `Metric layout: ${section.layout}`);
  toggle.onclick = () => update(app, state.toggleLayout(app.draft, si));
  layoutRow.appendChild(toggle);
  if (app.draft.sections.length > 1) {
    const removeSection = el("button", "remove", "remove section");
    removeSection.onclick = () => update(app, state.removeSection(app.draft, si));
    layoutRow.appendChild(removeSection);
  }
  card.appendChild(layoutRow);

  // inline validation errors for this section, from the latest skeleton
  const sectionErrors = app.skeleton?.sections.find((s) => s.index === si)?.errors ?? [];
  for (const issue of sectionErrors) {
    card.appendChild(el("p", "inline-error", `${issue.path}: ${issue.message}`));
  }
  return card;
}

function groupRow(app: App, si: number, gi: number, group: state.GroupDraft): HTMLElement {
  const row = el("div", "group-row");
  row.appendChild(el("span", "field-name", group.primary));

  const secondary = document.createElement("select");
  secondary.title = "secondary field";
  secondary.appendChild(option("", group.secondary ? "(clear second field)" : "+ second field"));
  for (const column of state.dimensionColumns(app.schema)) {
    if (column.name !== group.primary) secondary.appendChild(option(column.name));
  }
  if (group.secondary) secondary.value = group.secondary;
  // the group is full at two fields: the control only replaces or clears
  secondary.disabled = !state.canAddField(group) && group.secondary === null;
  secondary.onchange = () => {
    const result = state.setSecondaryField(app.draft, si, gi, secondary.value || null);
    if (result.error) {
      row.appendChild(el("p", "inline-error", result.error));
      return;
    }
    update(app, result.draft);
  };
  row.appendChild(secondary);

  const cap = el("span", "cap-note", `${state.groupSize(group)}/${state.MAX_GROUP_FIELDS} fields`);
  row.appendChild(cap);

  const remove = el("button", "remove", "remove");
  remove.onclick = () => update(app, state.removeGroup(app.draft, si, gi));
  row.appendChild(remove);
  return row;
}

function exportButton(app: App): HTMLElement {
  const button = el("button", undefined, "Export draft");
  button.onclick = () => {
    const payload = JSON.stringify(state.toSpecDocument(app.draft), null, 2);
    const blob = new Blob([payload], { type: "application/json" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = "dashboard-spec.json";
    link.click();
    URL.revokeObjectURL(link.href);
  };
  return button;
}

function importControl(app: App): HTMLElement {
  const label = el("label", "import");
  label.appendChild(document.createTextNode("Import draft"));
  const input = document.createElement("input");
  input.type = "file";
  input.accept = "application/json";
  input.onchange = async () => {
    const file = input.files?.[0];
    if (!file) return;
    try {
      const doc = JSON.parse(await file.text()) as SpecDoc;
      update(app, state.fromSpecDocument(doc));
    } catch {
      app.notice = "could not read that draft file";
      renderRight(app);
    }
  };
  label.appendChild(input);
  return label;
}

// ---------------------------------------------------------------------------
// Right pane: live preview, then the created dashboard

async function createDashboard(app: App): Promise<void> {
  try {
    app.compiled = await postCompile(state.toSpecDocument(app.draft));
    app.markOverrides = {};
    app.cellOrder = {};
    app.notice = null;
  } catch (error) {
    if (error instanceof CompileRejected && "errors" in error.report) {
      app.notice = error.report.errors.map((e) => `${e.path}: ${e.message}`).join("\n");
    } else {
      app.notice = "compile failed";
    }
  }
  renderRight(app);
}

function renderRight(app: App): void {
  const pane = document.getElementById("preview");
  if (!pane) return;
  pane.innerHTML = "";
  if (app.notice) {
    pane.appendChild(el("div", "validation-panel", app.notice));
  }
  if (app.compiled) {
    pane.appendChild(el("h2", undefined, "Created dashboard"));
    const host = el("div", "dashboard-host");
    host.innerHTML = renderDashboard(app.compiled, {
      markOverrides: app.markOverrides,
      cellOrder: app.cellOrder,
    });
    attachMarkMenus(app, host);
    attachDragReorder(app, host);
    pane.appendChild(host);
    const back = el("button", undefined, "Back to preview");
    back.onclick = () => {
      app.compiled = null;
      renderRight(app);
    };
    pane.appendChild(back);
    return;
  }
  pane.appendChild(el("h2", undefined, "Preview"));
  if (app.skeleton) {
    const host = el("div", "skeleton-host");
    host.innerHTML = renderSkeleton(app.skeleton);
    pane.appendChild(host);
  } else {
    pane.appendChild(el("p", "hint", "loading preview…"));
  }
  // keep the editor's inline section errors in sync with the skeleton
  renderEditorErrorsOnly(app);
}

function renderEditorErrorsOnly(app: App): void {
  // cheap approach: re-render the whole editor; state is small
  renderEditor(app);
}

function attachMarkMenus(app: App, host: HTMLElement): void {
  if (!app.compiled) return;
  host.querySelectorAll<HTMLElement>(".dash-cell").forEach((cell) => {
    const chartIndex = Number(cell.dataset.chart);
    const chart = app.compiled!.charts[chartIndex];
    if (!chart.editable) return;
    const menu = el("div", "mark-menu");
    const select = document.createElement("select");
    select.title = "chart type";
    const current = app.markOverrides[chartIndex] ?? chart.mark;
    for (const mark of ALL_MARKS) {
      const opt = option(mark);
      if (mark === current) opt.selected = true;
      select.appendChild(opt);
    }
    select.onchange = () => {
      const mark = select.value as Mark;
      const reason = incompatibilityReason(chart, mark);
      if (reason) {
        select.value = current;
        const note = el("p", "inline-error", reason);
        menu.appendChild(note);
        setTimeout(() => note.remove(), 2500);
        return;
      }
      app.markOverrides[chartIndex] = mark;
      renderRight(app);
    };
    menu.appendChild(select);
    menu.appendChild(
      el("span", "compat-note", `compatible: ${compatibleMarks(chart).join(", ")}`),
    );
    cell.prepend(menu);
  });
}

/** In-session drag reordering of widgets within a section; not persisted. */
function attachDragReorder(app: App, host: HTMLElement): void {
  if (!app.compiled) return;
  const ir = app.compiled;
  for (const [si, section] of ir.sections.entries()) {
    if (!app.cellOrder[si]) {
      app.cellOrder[si] = section.cells.map((c) => c.chart);
    }
  }
  let dragged: HTMLElement | null = null;
  host.querySelectorAll<HTMLElement>(".dash-cell").forEach((cell) => {
    cell.addEventListener("dragstart", () => {
      dragged = cell;
    });
    cell.addEventListener("dragover", (event) => event.preventDefault());
    cell.addEventListener("drop", (event) => {
      event.preventDefault();
      if (!dragged || dragged === cell) return;
      if (dragged.dataset.section !== cell.dataset.section) return;
      const si = Number(cell.dataset.section);
      const order = app.cellOrder[si];
      const a = order.indexOf(Number(dragged.dataset.chart));
      const b = order.indexOf(Number(cell.dataset.chart));
      [order[a], order[b]] = [order[b], order[a]];
      renderRight(app);
    });
  });
}
