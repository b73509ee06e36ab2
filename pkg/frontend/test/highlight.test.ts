// @vitest-environment happy-dom
import { describe, expect, it } from "vitest";

import { renderHighlighted, toLabeledSpans } from "../src/highlight.js";

describe("renderHighlighted", () => {
  it("highlights by token index, never by text search", () => {
    // repeated words would fool any string-offset recomputation
    const text = "the smell of the smell";
    const node = renderHighlighted(
      text,
      toLabeledSpans([[3, 5]], ["noun"]),
      document,
    );
    expect(node.textContent).toBe(text);
    const highlighted = [...node.querySelectorAll(".hl")].map((el) => el.textContent);
    expect(highlighted).toEqual(["the", "smell"]);
    // the first "the smell" (tokens 0-1) is untouched
    const first = node.childNodes[0];
    expect(first.nodeType).toBe(3); // plain text node
  });

  it("stacks classes for overlapping spans", () => {
    const node = renderHighlighted(
      "a warm aroma of tar",
      toLabeledSpans(
        [
          [1, 5],
          [1, 2],
          [4, 5],
        ],
        ["match", "adj", "noun"],
      ),
      document,
    );
    const spans = [...node.querySelectorAll("span.hl")];
    expect(spans.map((s) => s.textContent)).toEqual(["warm", "aroma", "of", "tar"]);
    expect(spans[0].className).toBe("hl hl-match hl hl-adj");
    expect(spans[3].className).toBe("hl hl-match hl hl-noun");
  });

  it("defaults missing labels to match", () => {
    const node = renderHighlighted("a b", toLabeledSpans([[0, 1]], []), document);
    expect(node.querySelector(".hl-match")).not.toBeNull();
  });
});
