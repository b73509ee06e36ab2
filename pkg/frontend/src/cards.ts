/** Extract and candidate cards.
 *
 * Every number on a card (tallies, precision, decision) is fetched from
 * the server or taken from its acknowledgments; the UI does no precision
 * math of its own.
 */

import { renderHighlighted, toLabeledSpans } from "./highlight.js";
import type {
  CandidateView,
  ExtractView,
  JudgmentAck,
  JudgmentLabel,
  Tallies,
} from "./types.js";

export const JUDGMENT_LABELS: JudgmentLabel[] = ["tp", "fp", "unknown"];

export function renderPrecision(precision: number | null): string {
  return precision === null ? "NA" : precision.toFixed(2);
}

export function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function extractCard(extract: ExtractView, doc: Document = document): HTMLElement {
  const card = el(doc, "article", "extract-card");
  card.dataset.docId = extract.doc_id;
  card.dataset.sentIndex = String(extract.sent_index);
  card.appendChild(
    renderHighlighted(extract.text, toLabeledSpans(extract.spans, extract.span_labels), doc),
  );
  card.appendChild(el(doc, "span", "chip source", extract.source));
  return card;
}

export interface CandidateHooks {
  onJudge(candidate: CandidateView, extract: ExtractView, label: JudgmentLabel): void;
  onExemptToggle?(candidate: CandidateView, exempt: boolean): void;
}

function talliesText(tallies: Tallies): string {
  return `tp ${tallies.tp} / fp ${tallies.fp} / unknown ${tallies.unknown}`;
}

export function candidateCard(
  candidate: CandidateView,
  hooks: CandidateHooks,
  doc: Document = document,
): HTMLElement {
  const card = el(doc, "article", "candidate-card");
  card.dataset.patternId = candidate.pattern_id;

  const header = el(doc, "header");
  header.appendChild(el(doc, "strong", "pattern-id", candidate.pattern_id));
  header.appendChild(el(doc, "code", "pattern-source", candidate.canonical));
  header.appendChild(el(doc, "span", "chip", candidate.kind));
  if (candidate.approach !== "none") {
    header.appendChild(el(doc, "span", "chip", candidate.approach));
  }
  card.appendChild(header);

  const status = el(doc, "div", "status-line");
  const badge = el(doc, "span", `badge badge-${candidate.decision}`, candidate.decision);
  badge.dataset.role = "decision";
  status.appendChild(badge);
  const precision = el(
    doc,
    "span",
    "precision",
    `precision ${renderPrecision(candidate.precision)}`,
  );
  precision.dataset.role = "precision";
  status.appendChild(precision);
  const tallies = el(doc, "span", "tallies", talliesText(candidate.tallies));
  tallies.dataset.role = "tallies";
  status.appendChild(tallies);
  if (candidate.exempt) {
    status.appendChild(el(doc, "span", "chip exempt", "threshold-exempt"));
  }
  card.appendChild(status);

  const list = el(doc, "div", "sample-list");
  if (candidate.extracts.length === 0) {
    list.appendChild(
      el(doc, "p", "empty-sample", "no validation coverage; pattern removed"),
    );
  }
  for (const extract of candidate.extracts) {
    const row = extractCard(extract, doc);
    const buttons = el(doc, "div", "judgment-buttons");
    for (const label of JUDGMENT_LABELS) {
      const button = el(doc, "button", `judge judge-${label}`, label);
      button.dataset.label = label;
      if (extract.judgment === label) {
        button.classList.add("pressed");
        button.setAttribute("aria-pressed", "true");
      }
      button.addEventListener("click", () => {
        for (const sibling of buttons.querySelectorAll("button")) {
          sibling.classList.toggle("pressed", sibling === button);
          sibling.setAttribute("aria-pressed", String(sibling === button));
        }
        hooks.onJudge(candidate, extract, label);
      });
      buttons.appendChild(button);
    }
    row.appendChild(buttons);
    list.appendChild(row);
  }
  card.appendChild(list);
  return card;
}

/** Refresh the live numbers on a rendered card from a judgment ack. */
export function applyAck(card: HTMLElement, ack: JudgmentAck): void {
  const badge = card.querySelector<HTMLElement>('[data-role="decision"]');
  if (badge) {
    badge.textContent = ack.decision;
    badge.className = `badge badge-${ack.decision}`;
  }
  const precision = card.querySelector<HTMLElement>('[data-role="precision"]');
  if (precision) {
    precision.textContent = `precision ${renderPrecision(ack.precision)}`;
  }
  const tallies = card.querySelector<HTMLElement>('[data-role="tallies"]');
  if (tallies) {
    tallies.textContent = talliesText(ack.tallies);
  }
}

export function showInlineError(card: HTMLElement, message: string, doc: Document = document): void {
  let note = card.querySelector<HTMLElement>(".inline-error");
  if (!note) {
    note = el(doc, "p", "inline-error");
    card.appendChild(note);
  }
  note.textContent = message;
}
