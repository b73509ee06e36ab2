/** Token-span highlighting.
 *
 * Sentences arrive as space-joined token text plus token-index spans with
 * labels; rendering walks the token list and applies the classes of every
 * covering span. Offsets are never re-derived from the raw text, so
 * repeated words and odd whitespace cannot shift a highlight.
 */

export interface LabeledSpan {
  start: number;
  end: number;
  label: string;
}

export function toLabeledSpans(
  spans: [number, number][],
  labels: string[],
): LabeledSpan[] {
  return spans.map(([start, end], i) => ({
    start,
    end,
    label: labels[i] ?? "match",
  }));
}

export function renderHighlighted(
  text: string,
  spans: LabeledSpan[],
  doc: Document = document,
): HTMLElement {
  const root = doc.createElement("span");
  root.className = "sentence";
  const tokens = text.split(" ");
  tokens.forEach((token, i) => {
    if (i > 0) {
      root.appendChild(doc.createTextNode(" "));
    }
    const covering = spans.filter((s) => s.start <= i && i < s.end);
    if (covering.length === 0) {
      root.appendChild(doc.createTextNode(token));
      return;
    }
    const el = doc.createElement("span");
    el.className = covering.map((s) => `hl hl-${s.label}`).join(" ");
    el.title = covering.map((s) => s.label).join(", ");
    el.textContent = token;
    root.appendChild(el);
  });
  return root;
}
