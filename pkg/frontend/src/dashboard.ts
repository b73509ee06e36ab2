/** Cycle dashboard: the cycle table, lexicon growth sparkline, and
 * PR-curve data. Table rows are the server's history verbatim. */

import { el, renderPrecision } from "./cards.js";
import type { CycleRecordRow, KappaRow, Metrics, PrPointView } from "./types.js";

const CYCLE_COLUMNS: [string, (r: CycleRecordRow) => string][] = [
  ["cycle", (r) => String(r.cycle)],
  ["lexicon entries", (r) => String(r.lexicon_entries)],
  ["new (unseen) extracts", (r) => String(r.new_unseen_extracts)],
  ["hypothesized patterns", (r) => String(r.hypothesized_patterns)],
  [
    "new id. / ex. patterns",
    (r) => `${r.new_identification_patterns} / ${r.new_extraction_patterns}`,
  ],
  ["sifted", (r) => (r.sifted ? "yes" : "no")],
];

export function cycleTable(
  history: CycleRecordRow[],
  doc: Document = document,
): HTMLTableElement {
  const table = doc.createElement("table");
  table.className = "cycle-table";
  const head = doc.createElement("tr");
  for (const [title] of CYCLE_COLUMNS) {
    head.appendChild(el(doc, "th", undefined, title));
  }
  table.appendChild(head);
  for (const row of history) {
    const tr = doc.createElement("tr");
    tr.dataset.cycle = String(row.cycle);
    for (const [, render] of CYCLE_COLUMNS) {
      tr.appendChild(el(doc, "td", undefined, render(row)));
    }
    if (row.exempt_patterns.length > 0) {
      tr.title = `threshold-exempt: ${row.exempt_patterns.join(", ")}`;
    }
    table.appendChild(tr);
  }
  return table;
}

export function lexiconSparkline(
  growth: { cycle: number; lexicon_entries: number }[],
  doc: Document = document,
  width = 160,
  height = 36,
): SVGElement {
  const svg = doc.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(height));
  svg.setAttribute("class", "sparkline");
  if (growth.length === 0) {
    return svg;
  }
  const max = Math.max(...growth.map((g) => g.lexicon_entries), 1);
  const step = growth.length > 1 ? width / (growth.length - 1) : 0;
  const points = growth
    .map((g, i) => {
      const x = growth.length > 1 ? i * step : width / 2;
      const y = height - (g.lexicon_entries / max) * (height - 4) - 2;
      return `${x.toFixed(1)},${y.toFixed(1)}`;
    })
    .join(" ");
  const line = doc.createElementNS("http://www.w3.org/2000/svg", "polyline");
  line.setAttribute("points", points);
  line.setAttribute("fill", "none");
  line.setAttribute("stroke", "currentColor");
  svg.appendChild(line);
  return svg;
}

export function prTable(points: PrPointView[] | null, doc: Document = document): HTMLElement {
  if (points === null) {
    return el(
      doc,
      "p",
      "empty-metrics",
      "no evaluation corpus wired into this state directory",
    );
  }
  const table = doc.createElement("table");
  table.className = "pr-table";
  const head = doc.createElement("tr");
  for (const title of ["cutoff", "precision", "recall", "active patterns"]) {
    head.appendChild(el(doc, "th", undefined, title));
  }
  table.appendChild(head);
  for (const p of points) {
    const tr = doc.createElement("tr");
    tr.appendChild(el(doc, "td", undefined, p.cutoff.toFixed(2)));
    tr.appendChild(el(doc, "td", undefined, renderPrecision(p.precision)));
    tr.appendChild(el(doc, "td", undefined, p.recall.toFixed(3)));
    tr.appendChild(el(doc, "td", undefined, String(p.active_patterns)));
    table.appendChild(tr);
  }
  return table;
}

export function kappaTable(rows: KappaRow[] | null, doc: Document = document): HTMLElement {
  if (rows === null || rows.length === 0) {
    return el(doc, "p", "empty-metrics", "no shared-document agreement data");
  }
  const table = doc.createElement("table");
  table.className = "kappa-table";
  const head = doc.createElement("tr");
  for (const title of ["document", "annotators", "n", "kappa", "band"]) {
    head.appendChild(el(doc, "th", undefined, title));
  }
  table.appendChild(head);
  for (const row of rows) {
    const tr = doc.createElement("tr");
    tr.appendChild(el(doc, "td", undefined, row.doc_id));
    tr.appendChild(el(doc, "td", undefined, `${row.annotator_a} × ${row.annotator_b}`));
    tr.appendChild(el(doc, "td", undefined, String(row.n)));
    tr.appendChild(el(doc, "td", undefined, row.kappa.toFixed(3)));
    tr.appendChild(el(doc, "td", undefined, row.band));
    table.appendChild(tr);
  }
  return table;
}

export function dashboard(
  history: CycleRecordRow[],
  metrics: Metrics,
  doc: Document = document,
): HTMLElement {
  const root = el(doc, "section", "dashboard");
  const cycles = el(doc, "div", "panel");
  cycles.appendChild(el(doc, "h2", undefined, "Cycles"));
  cycles.appendChild(cycleTable(history, doc));
  root.appendChild(cycles);

  const growth = el(doc, "div", "panel");
  growth.appendChild(el(doc, "h2", undefined, "Lexicon growth"));
  growth.appendChild(lexiconSparkline(metrics.lexicon_growth, doc));
  const last = metrics.lexicon_growth[metrics.lexicon_growth.length - 1];
  growth.appendChild(
    el(doc, "p", undefined, last ? `${last.lexicon_entries} entries now` : "no data"),
  );
  root.appendChild(growth);

  const pr = el(doc, "div", "panel");
  pr.appendChild(el(doc, "h2", undefined, "Precision-recall by cutoff"));
  pr.appendChild(prTable(metrics.pr_curve, doc));
  root.appendChild(pr);

  const kappa = el(doc, "div", "panel");
  kappa.appendChild(el(doc, "h2", undefined, "Annotator agreement"));
  kappa.appendChild(kappaTable(metrics.kappa, doc));
  root.appendChild(kappa);
  return root;
}
