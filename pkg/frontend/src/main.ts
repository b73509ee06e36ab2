/** App bootstrap: tabs for extracts, candidates, composer, dashboard.
 *
 * All numbers shown anywhere come from the API; judgments flow through
 * the offline queue and update cards from server acknowledgments.
 */

import { ApiClient, ApiError, makeJudgment } from "./api.js";
import { applyAck, candidateCard, el, extractCard, showInlineError } from "./cards.js";
import { Composer } from "./composer.js";
import { dashboard } from "./dashboard.js";
import { JudgmentQueue } from "./queue.js";
import type { CandidateView, CycleInfo, ExtractView, JudgmentLabel } from "./types.js";

interface AppState {
  cycle: CycleInfo | null;
  sift: boolean;
  page: number;
  judge: string;
}

export function createApp(root: HTMLElement, api: ApiClient, doc: Document = document) {
  const state: AppState = { cycle: null, sift: false, page: 0, judge: "reviewer" };
  const cards = new Map<string, HTMLElement>();

  const queue = new JudgmentQueue(api, (event) => {
    if (event.type === "ack") {
      const card = cards.get(event.body.pattern_id);
      if (card) applyAck(card, event.ack);
    } else if (event.type === "rejected") {
      const card = cards.get(event.body.pattern_id);
      if (card) {
        showInlineError(
          card,
          `judgment rejected (${event.status}): ${JSON.stringify(event.detail)}`,
          doc,
        );
      }
    } else {
      banner.textContent = `offline: ${event.pending} judgment(s) queued, will retry`;
    }
  });

  const banner = el(doc, "div", "banner");
  const header = el(doc, "header", "app-header");
  header.appendChild(el(doc, "h1", undefined, "smellex review"));
  const cycleLine = el(doc, "span", "cycle-line");
  header.appendChild(cycleLine);
  root.appendChild(header);
  root.appendChild(banner);

  const nav = el(doc, "nav", "tabs");
  const panes: Record<string, HTMLElement> = {};
  for (const name of ["extracts", "candidates", "compose", "dashboard"]) {
    const button = el(doc, "button", "tab", name);
    button.addEventListener("click", () => {
      void show(name);
    });
    nav.appendChild(button);
    panes[name] = el(doc, "main", `pane pane-${name}`);
  }
  root.appendChild(nav);
  for (const pane of Object.values(panes)) {
    pane.hidden = true;
    root.appendChild(pane);
  }

  async function refreshCycle(): Promise<void> {
    state.cycle = await api.cycle();
    const draft = state.cycle.draft;
    cycleLine.textContent =
      `cycle ${state.cycle.cycle} · ${state.cycle.phase}` +
      (draft ? ` · ${draft.new_unseen_extracts} new extracts` : "");
  }

  async function renderExtracts(): Promise<void> {
    const pane = panes.extracts;
    pane.replaceChildren();
    const controls = el(doc, "div", "controls");
    const siftToggle = el(doc, "button", "toggle", state.sift ? "sift: on" : "sift: off");
    siftToggle.addEventListener("click", () => {
      state.sift = !state.sift;
      state.page = 0;
      void renderExtracts();
    });
    controls.appendChild(siftToggle);
    pane.appendChild(controls);
    const page = await api.extracts(state.page, state.sift);
    pane.appendChild(
      el(doc, "p", "page-line", `${page.total} extract(s), page ${page.page}`),
    );
    for (const extract of page.extracts) {
      pane.appendChild(extractCard(extract, doc));
    }
    const pager = el(doc, "div", "pager");
    if (state.page > 0) {
      const prev = el(doc, "button", undefined, "newer");
      prev.addEventListener("click", () => {
        state.page -= 1;
        void renderExtracts();
      });
      pager.appendChild(prev);
    }
    if ((page.page + 1) * page.page_size < page.total) {
      const next = el(doc, "button", undefined, "older");
      next.addEventListener("click", () => {
        state.page += 1;
        void renderExtracts();
      });
      pager.appendChild(next);
    }
    pane.appendChild(pager);
  }

  function onJudge(candidate: CandidateView, extract: ExtractView, label: JudgmentLabel): void {
    queue.enqueue(
      makeJudgment(
        candidate.pattern_id,
        extract.doc_id,
        extract.sent_index,
        label,
        state.judge,
      ),
    );
    void queue.flush();
  }

  async function renderCandidates(): Promise<void> {
    const pane = panes.candidates;
    pane.replaceChildren();
    cards.clear();
    const candidates = await api.candidates();
    if (candidates.length === 0) {
      pane.appendChild(el(doc, "p", undefined, "no candidates this cycle yet"));
    }
    for (const candidate of candidates) {
      const card = candidateCard(candidate, { onJudge }, doc);
      cards.set(candidate.pattern_id, card);
      pane.appendChild(card);
    }
    const advance = el(doc, "button", "advance", "advance cycle");
    advance.addEventListener("click", () => {
      void (async () => {
        try {
          await queue.flush();
          const result = await api.advance(state.cycle?.cycle ?? 0);
          banner.textContent = `cycle ${result.finalized.cycle} finalized: ${result.finalized.new_identification_patterns} id. / ${result.finalized.new_extraction_patterns} ex. patterns accepted`;
          await refreshCycle();
          await renderCandidates();
        } catch (err) {
          if (err instanceof ApiError && err.blocking) {
            banner.textContent = `cannot advance; judge first: ${err.blocking.join(", ")}`;
          } else {
            banner.textContent = String(err instanceof ApiError ? err.detail : err);
          }
        }
      })();
    });
    pane.appendChild(advance);
  }

  async function renderDashboard(): Promise<void> {
    const pane = panes.dashboard;
    pane.replaceChildren();
    const [cycle, metrics] = await Promise.all([api.cycle(), api.metrics()]);
    pane.appendChild(dashboard(cycle.history, metrics, doc));
  }

  const composer = new Composer(
    api,
    () => {
      void show("candidates");
    },
    doc,
  );
  panes.compose.appendChild(composer.root);

  async function show(name: string): Promise<void> {
    for (const [paneName, pane] of Object.entries(panes)) {
      pane.hidden = paneName !== name;
    }
    await refreshCycle();
    if (name === "extracts") await renderExtracts();
    else if (name === "candidates") await renderCandidates();
    else if (name === "dashboard") await renderDashboard();
  }

  return { show, queue, refreshCycle, composer };
}

declare global {
  interface Window {
    __SMELLEX_NO_AUTOSTART__?: boolean;
  }
}

if (typeof window !== "undefined" && !window.__SMELLEX_NO_AUTOSTART__) {
  const params = new URLSearchParams(window.location.search);
  const api = new ApiClient(params.get("api") ?? "");
  const root = document.getElementById("app");
  if (root) {
    const app = createApp(root, api);
    void app.show("extracts");
  }
}
