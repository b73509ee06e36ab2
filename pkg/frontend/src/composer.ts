/** Pattern composer: live server-side parse with column-anchored
 * diagnostics, and a match preview over the current extract page before
 * submission. Zero preview matches still allow submitting. */

import { ApiClient, ApiError } from "./api.js";
import { el, extractCard } from "./cards.js";
import type { CandidateView } from "./types.js";

export class Composer {
  readonly root: HTMLElement;
  readonly input: HTMLTextAreaElement;
  readonly kindSelect: HTMLSelectElement;
  readonly submitButton: HTMLButtonElement;
  readonly diagnostics: HTMLElement;
  readonly preview: HTMLElement;
  private checkSeq = 0;

  constructor(
    private api: ApiClient,
    private onSubmitted: (candidate: CandidateView) => void,
    private doc: Document = document,
  ) {
    this.root = el(doc, "section", "composer");
    this.root.appendChild(el(doc, "h2", undefined, "Hypothesize a pattern"));

    this.input = doc.createElement("textarea");
    this.input.className = "pattern-input";
    this.input.rows = 2;
    this.input.placeholder = "[<adj>] <smell_noun> _of_ <pronoun>* [<noun>]";
    this.input.addEventListener("input", () => {
      void this.check(this.input.value);
    });
    this.root.appendChild(this.input);

    const controls = el(doc, "div", "composer-controls");
    this.kindSelect = doc.createElement("select");
    for (const kind of ["identification", "extraction"]) {
      const option = doc.createElement("option");
      option.value = kind;
      option.textContent = kind;
      this.kindSelect.appendChild(option);
    }
    controls.appendChild(this.kindSelect);

    this.submitButton = el(doc, "button", "submit-pattern", "submit pattern");
    this.submitButton.addEventListener("click", () => {
      void this.submit();
    });
    controls.appendChild(this.submitButton);
    this.root.appendChild(controls);

    this.diagnostics = el(doc, "pre", "diagnostics");
    this.diagnostics.dataset.role = "diagnostics";
    this.root.appendChild(this.diagnostics);

    this.preview = el(doc, "div", "preview");
    this.preview.dataset.role = "preview";
    this.root.appendChild(this.preview);
  }

  /** Server-side parse + preview of the draft. */
  async check(draft: string): Promise<void> {
    const seq = ++this.checkSeq;
    if (!draft.trim()) {
      this.diagnostics.textContent = "";
      this.preview.replaceChildren();
      this.submitButton.disabled = true;
      return;
    }
    try {
      const result = await this.api.preview(draft);
      if (seq !== this.checkSeq) return; // a newer keystroke superseded us
      this.diagnostics.textContent = `ok: ${result.canonical}`;
      this.diagnostics.className = "diagnostics ok";
      this.submitButton.disabled = false;
      this.preview.replaceChildren();
      this.preview.appendChild(
        el(
          this.doc,
          "p",
          "preview-count",
          `${result.match_count} match(es) on the current extract page`,
        ),
      );
      for (const match of result.matches) {
        this.preview.appendChild(extractCard(match, this.doc));
      }
    } catch (err) {
      if (seq !== this.checkSeq) return;
      this.preview.replaceChildren();
      this.submitButton.disabled = true;
      if (err instanceof ApiError && err.diagnostic) {
        const { message, column } = err.diagnostic;
        this.diagnostics.className = "diagnostics error";
        this.diagnostics.textContent = [
          draft,
          " ".repeat(Math.max(0, column - 1)) + "^",
          `column ${column}: ${message}`,
        ].join("\n");
      } else {
        this.diagnostics.className = "diagnostics error";
        this.diagnostics.textContent = String(
          err instanceof ApiError ? err.detail : err,
        );
      }
    }
  }

  async submit(): Promise<void> {
    try {
      const candidate = await this.api.submitPattern(
        this.input.value,
        this.kindSelect.value,
      );
      this.input.value = "";
      this.diagnostics.textContent = `submitted ${candidate.pattern_id}`;
      this.diagnostics.className = "diagnostics ok";
      this.preview.replaceChildren();
      this.onSubmitted(candidate);
    } catch (err) {
      if (err instanceof ApiError && err.diagnostic) {
        await this.check(this.input.value);
      } else {
        this.diagnostics.className = "diagnostics error";
        this.diagnostics.textContent = String(
          err instanceof ApiError ? err.detail : err,
        );
      }
    }
  }
}
