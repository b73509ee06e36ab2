"""Evaluation harness: gold standard, agreement, precision-recall, significance.

Gold annotations use the six-tag span schema (d = smell description,
o = smell alluded to without expansion, v = associated verb, s = sense
of smell, a = modifying adjective, n = reference smell noun group).  A
sentence is a positive *smell experience* when it carries a d or o
span, and a positive *smell description* when it carries a d span.
When several annotators covered a document, sentence labels reduce by
majority vote with ties counting as positive.

Gold file format, one span per line::

    doc_id<TAB>sent_index<TAB>start<TAB>end<TAB>tag<TAB>annotator

Agreement is pairwise Cohen's kappa with Landis-Koch strength bands;
precision-recall is sentence-level; the significance tests (exact
McNemar on paired correctness, and a seeded bootstrap resampling of the
recall difference) are artifact choices, provided because group
comparisons need one.  Undefined precision is reported as None and
rendered NA, never as 0 or 1.

All operations here are pure over immutable inputs.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from random import Random
from typing import Iterable, Mapping, Sequence, TextIO

from .corpus import Corpus
from .errors import EvaluationError
from .keywords import KeywordLexicon, keyword_scan
from .matcher import compile_record, match_sentence
from .pattern_dsl import PatternRecord

GOLD_TAGS = ("d", "o", "v", "s", "a", "n")
POSITIVE_TAGS = {"experience": frozenset(("d", "o")), "description": frozenset(("d",))}


@dataclass(frozen=True)
class GoldSpan:
    start: int
    end: int
    tag: str
    annotator: str


@dataclass(frozen=True)
class GoldAnnotation:
    doc_id: str
    sent_index: int
    spans: tuple[GoldSpan, ...]

    @property
    def key(self) -> tuple[str, int]:
        return (self.doc_id, self.sent_index)


def read_gold(fh: TextIO, corpus: Corpus | None = None) -> list[GoldAnnotation]:
    by_sentence: dict[tuple[str, int], list[GoldSpan]] = {}
    for lineno, raw in enumerate(fh, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 6:
            raise EvaluationError(
                "gold line %d: expected 6 columns, got %d" % (lineno, len(cols))
            )
        doc_id, sent_index, start, end, tag, annotator = cols
        if tag not in GOLD_TAGS:
            raise EvaluationError("gold line %d: unknown tag %r" % (lineno, tag))
        start, end, sent_index = int(start), int(end), int(sent_index)
        if start < 0 or end <= start:
            raise EvaluationError(
                "gold line %d: bad span (%d, %d)" % (lineno, start, end)
            )
        if corpus is not None:
            sentence = corpus.sentence(doc_id, sent_index)
            if end > len(sentence.tokens):
                raise EvaluationError(
                    "gold line %d: span (%d, %d) outside sentence of %d tokens"
                    % (lineno, start, end, len(sentence.tokens))
                )
        by_sentence.setdefault((doc_id, sent_index), []).append(
            GoldSpan(start, end, tag, annotator)
        )
    return [
        GoldAnnotation(doc_id, sent_index, tuple(spans))
        for (doc_id, sent_index), spans in sorted(by_sentence.items())
    ]


def load_gold(path: str | Path, corpus: Corpus | None = None) -> list[GoldAnnotation]:
    with open(path, encoding="utf-8") as fh:
        return read_gold(fh, corpus)


def tag_counts(annotations: Iterable[GoldAnnotation]) -> dict[str, int]:
    counts = Counter()
    for ann in annotations:
        for span in ann.spans:
            counts[span.tag] += 1
    return {tag: counts.get(tag, 0) for tag in GOLD_TAGS}


def doc_annotators(annotations: Iterable[GoldAnnotation]) -> dict[str, set[str]]:
    out: dict[str, set[str]] = {}
    for ann in annotations:
        out.setdefault(ann.doc_id, set()).update(s.annotator for s in ann.spans)
    return out


def gold_positive(
    annotations: Iterable[GoldAnnotation], mode: str = "experience"
) -> set[tuple[str, int]]:
    """Sentences labeled positive, majority-reduced across annotators.

    Ties count as positive; single-annotator documents reduce to that
    annotator's label.
    """
    tags = POSITIVE_TAGS.get(mode)
    if tags is None:
        raise EvaluationError("unknown positive-class mode %r" % mode)
    annotations = list(annotations)
    annotators = doc_annotators(annotations)
    out = set()
    for ann in annotations:
        voters = annotators[ann.doc_id]
        positive_votes = {
            s.annotator for s in ann.spans if s.tag in tags
        }
        if 2 * len(positive_votes) >= len(voters):
            out.add(ann.key)
    return out


def annotator_labels(
    annotations: Iterable[GoldAnnotation],
    corpus: Corpus,
    doc_id: str,
    annotator: str,
    mode: str = "experience",
) -> list[int]:
    """0/1 labels over one document's sentences for one annotator."""
    tags = POSITIVE_TAGS[mode]
    positive = {
        ann.key
        for ann in annotations
        if ann.doc_id == doc_id
        and any(s.annotator == annotator and s.tag in tags for s in ann.spans)
    }
    doc = next((d for d in corpus.documents if d.doc_id == doc_id), None)
    if doc is None:
        raise EvaluationError("document %r not in corpus" % doc_id)
    return [1 if s.key in positive else 0 for s in doc.sentences]


# ---------------------------------------------------------------------------
# Cohen's kappa

LANDIS_KOCH_BANDS = (
    (0.80, "near-perfect"),
    (0.60, "substantial"),
    (0.40, "moderate"),
    (0.20, "fair"),
    (0.00, "slight"),
)


def landis_koch_band(kappa: float) -> str:
    for floor, label in LANDIS_KOCH_BANDS:
        if kappa > floor:
            return label
    return "poor"


def cohens_kappa(labels_a: Sequence, labels_b: Sequence) -> tuple[float, str]:
    """(kappa, Landis-Koch band) for two equal-length label sequences."""
    if len(labels_a) != len(labels_b):
        raise EvaluationError(
            "label sequences differ in length (%d vs %d)"
            % (len(labels_a), len(labels_b))
        )
    n = len(labels_a)
    if n == 0:
        raise EvaluationError("cannot compute kappa on empty input")
    p_o = sum(1 for a, b in zip(labels_a, labels_b) if a == b) / n
    freq_a = Counter(labels_a)
    freq_b = Counter(labels_b)
    p_e = sum(
        (freq_a[c] / n) * (freq_b[c] / n) for c in set(freq_a) | set(freq_b)
    )
    if p_e == 1.0:
        # both annotators constant and equal
        kappa = 1.0
    else:
        kappa = (p_o - p_e) / (1.0 - p_e)
    return kappa, landis_koch_band(kappa)


def kappa_matrix(
    annotations: Iterable[GoldAnnotation], corpus: Corpus, mode: str = "experience"
) -> list[dict]:
    """Pairwise kappa per document shared by two or more annotators."""
    annotations = list(annotations)
    rows = []
    for doc_id, annotators in sorted(doc_annotators(annotations).items()):
        ordered = sorted(annotators)
        for i, a in enumerate(ordered):
            for b in ordered[i + 1 :]:
                la = annotator_labels(annotations, corpus, doc_id, a, mode)
                lb = annotator_labels(annotations, corpus, doc_id, b, mode)
                kappa, band = cohens_kappa(la, lb)
                rows.append(
                    {
                        "doc_id": doc_id,
                        "annotator_a": a,
                        "annotator_b": b,
                        "n": len(la),
                        "kappa": kappa,
                        "band": band,
                    }
                )
    return rows


# ---------------------------------------------------------------------------
# Sentence-level precision-recall

def predict_sentences(
    records: Iterable[PatternRecord], corpus: Corpus, groups: Mapping, engine=None
) -> set[tuple[str, int]]:
    """Sentences any pattern in the set matches."""
    compiled = [compile_record(rec, groups) for rec in records]
    out = set()
    for sentence in corpus.sentences():
        for cp in compiled:
            if match_sentence(cp, sentence, engine):
                out.add(sentence.key)
                break
    return out


def precision_recall(
    predicted: set, gold_positive_set: set, universe: set
) -> tuple[float | None, float]:
    """Sentence-level (precision, recall); precision is None when undefined."""
    if not predicted <= universe or not gold_positive_set <= universe:
        raise EvaluationError("predictions and gold must lie within the universe")
    hits = len(predicted & gold_positive_set)
    precision = hits / len(predicted) if predicted else None
    recall = hits / len(gold_positive_set) if gold_positive_set else 1.0
    return precision, recall


@dataclass(frozen=True)
class PrPoint:
    cutoff: float
    precision: float | None
    recall: float
    active_patterns: int


def pr_curve(
    records: Iterable[PatternRecord],
    gold_positive_set: set,
    corpus: Corpus,
    cutoffs: Iterable[float],
    groups: Mapping,
    engine=None,
) -> list[PrPoint]:
    """PR of the active pattern set at each estimated-precision cutoff.

    Set predictions distribute over union, so per-pattern prediction
    sets are computed once and unioned per cutoff.
    """
    records = list(records)
    for rec in records:
        if rec.estimated_precision is None:
            raise EvaluationError(
                "pattern %r lacks an estimated precision; cannot place it "
                "on the curve" % rec.id
            )
    universe = corpus.universe()
    predictions = {
        rec.id: predict_sentences([rec], corpus, groups, engine) for rec in records
    }
    points = []
    for cutoff in cutoffs:
        active = [rec for rec in records if rec.estimated_precision >= cutoff]
        predicted = set()
        for rec in active:
            predicted |= predictions[rec.id]
        precision, recall = precision_recall(predicted, gold_positive_set, universe)
        points.append(PrPoint(cutoff, precision, recall, len(active)))
    return points


def keyword_baseline(
    corpus: Corpus, kw: KeywordLexicon, expand: bool = True
) -> set[tuple[str, int]]:
    """The keyword-scan prediction set."""
    return {s.key for s in corpus.sentences() if keyword_scan(s, kw, expand)}


# ---------------------------------------------------------------------------
# Paired significance

def mcnemar_exact(
    pred_a: set, pred_b: set, gold: set, universe: set
) -> tuple[int, int, float]:
    """Exact two-sided McNemar on paired sentence-level correctness.

    b counts sentences where A is correct and B wrong, c the converse;
    the p-value is 2 * P(X <= min(b, c)) for X ~ Binomial(b + c, 1/2),
    capped at 1.
    """
    for pred in (pred_a, pred_b):
        if not pred <= universe:
            raise EvaluationError("predictions must lie within the universe")
    if not gold <= universe:
        raise EvaluationError("gold must lie within the universe")
    b = c = 0
    for key in universe:
        correct_a = (key in pred_a) == (key in gold)
        correct_b = (key in pred_b) == (key in gold)
        if correct_a and not correct_b:
            b += 1
        elif correct_b and not correct_a:
            c += 1
    n = b + c
    if n == 0:
        return b, c, 1.0
    m = min(b, c)
    tail = sum(math.comb(n, k) for k in range(m + 1))
    p = 2 * Fraction(tail, 2**n)
    return b, c, min(1.0, float(p))


def bootstrap_recall_test(
    pred_a: set,
    pred_b: set,
    gold: set,
    universe: set,
    n_resamples: int = 1000,
    seed: int = 0,
) -> tuple[float, float]:
    """Seeded bootstrap of the recall difference; returns (diff, p-value).

    Resamples the universe with replacement and compares the recall of A
    and B on each replicate; two-sided p from the replicate sign counts.
    """
    keys = sorted(universe)
    flags = [(k in gold, k in pred_a, k in pred_b) for k in keys]
    _, recall_a = precision_recall(pred_a, gold, universe)
    _, recall_b = precision_recall(pred_b, gold, universe)
    observed = recall_a - recall_b
    rng = Random(seed)
    n = len(keys)
    le = ge = used = 0
    for _ in range(n_resamples):
        g = ia = ib = 0
        for _ in range(n):
            in_gold, in_a, in_b = flags[rng.randrange(n)]
            if in_gold:
                g += 1
                if in_a:
                    ia += 1
                if in_b:
                    ib += 1
        if g == 0:
            continue
        used += 1
        diff = ia / g - ib / g
        if diff <= 0:
            le += 1
        if diff >= 0:
            ge += 1
    if used == 0:
        return observed, 1.0
    p = 2 * min(le / used, ge / used)
    return observed, min(1.0, p)
