"""Brute-force matching oracle, independent of the VM engines.

Enumerates every (start, segmentation) assignment of pattern elements to
token subsequences, in greedy priority order (longer/continuing options
first, depth-first), and takes the first complete solution per start.
Chunk grammars are realized as regular expressions over a string of
POS letters, exercised by exhaustive fullmatch probing, so none of the
engine's compilation or backtracking machinery is shared.
"""

import re
import string

from smellex.corpus import POS_CODE, UPOS_TAGS
from smellex.pattern_dsl import (
    Capture,
    ChunkRef,
    DepWildcard,
    Group,
    Literal,
    PosWildcard,
    SynRef,
)

TAG_LETTER = {tag: string.ascii_uppercase[i] for i, tag in enumerate(UPOS_TAGS)}


def _cls(*tags):
    return "[%s]" % "".join(TAG_LETTER[t] for t in tags)


CHUNK_RE = {
    "adj": re.compile("%s*%s" % (_cls("ADV"), _cls("ADJ"))),
    "noun": re.compile(
        "%s?%s*%s(?:%s%s+)*"
        % (
            _cls("DET"),
            _cls("ADJ", "NOUN", "PROPN"),
            _cls("NOUN", "PROPN"),
            _cls("CCONJ"),
            _cls("ADJ", "NOUN", "PROPN"),
        )
    ),
    "verb": re.compile(
        "%s*%s%s*%s?"
        % (_cls("ADV"), _cls("VERB", "AUX"), _cls("ADV"), _cls("ADP", "PART"))
    ),
    "pronoun": re.compile(_cls("PRON")),
}

_NOUN = POS_CODE["NOUN"]
_PROPN = POS_CODE["PROPN"]


class Ctx:
    def __init__(self, sentence, groups):
        self.low = sentence.lower_forms
        self.lemma = sentence.lemmas
        self.pos = sentence.pos_codes
        self.dep = sentence.deps
        self.n = len(self.low)
        self.pos_letters = "".join(
            string.ascii_uppercase[code] for code in self.pos
        )
        self.groups = {
            name: frozenset((lemma, POS_CODE[pos]) for lemma, pos in g.members)
            for name, g in groups.items()
        }


def _ways_once(el, ctx, i):
    """Yield (end, captures) for ONE occurrence of el at i, best first."""
    if isinstance(el, Literal):
        if i < ctx.n and ctx.low[i] in el.words:
            yield (i + 1, {})
    elif isinstance(el, PosWildcard):
        if i < ctx.n and ctx.pos[i] == POS_CODE[el.tag]:
            yield (i + 1, {})
    elif isinstance(el, DepWildcard):
        if i < ctx.n:
            d = ctx.dep[i]
            if d is not None:
                if d == el.label:
                    yield (i + 1, {})
            elif (
                el.label == "compound"
                and ctx.pos[i] in (_NOUN, _PROPN)
                and i + 1 < ctx.n
                and ctx.pos[i + 1] == _NOUN
            ):
                yield (i + 1, {})
    elif isinstance(el, SynRef):
        members = ctx.groups[el.group]
        if i < ctx.n and (
            (ctx.lemma[i], ctx.pos[i]) in members
            or (ctx.low[i], ctx.pos[i]) in members
        ):
            yield (i + 1, {})
    elif isinstance(el, ChunkRef):
        rx = CHUNK_RE[el.chunk]
        for j in range(ctx.n, i, -1):  # longest first = greedy
            if rx.fullmatch(ctx.pos_letters[i:j]):
                yield (j, {})
    elif isinstance(el, Capture):
        for end, caps in _seq_ways(el.elements, ctx, i):
            merged = dict(caps)
            if end > i:
                merged[el.index] = (i, end)
            yield (end, merged)
    elif isinstance(el, Group):
        yield from _seq_ways(el.elements, ctx, i)
    else:
        raise TypeError(el)


def _ways(el, ctx, i):
    """Like _ways_once but honoring the element's quantifier."""
    if not el.star:
        yield from _ways_once(el, ctx, i)
        return

    def rec(p, caps):
        for q, more in _ways_once(el, ctx, p):
            if q > p:  # progress guard on empty-width iterations
                yield from rec(q, {**caps, **more})
        yield (p, caps)

    yield from rec(i, {})


def _seq_ways(elements, ctx, i):
    if not elements:
        yield (i, {})
        return
    head, rest = elements[0], elements[1:]
    for mid, caps1 in _ways(head, ctx, i):
        for end, caps2 in _seq_ways(rest, ctx, mid):
            yield (end, {**caps1, **caps2})


def oracle_matches(ast, groups, sentence):
    """Greedy-leftmost non-overlapping matches as (span, {index: span}) pairs."""
    ctx = Ctx(sentence, groups)
    out = []
    start = 0
    while start < ctx.n:
        first = next(_seq_ways(ast.elements, ctx, start), None)
        if first is None or first[0] == start:
            start += 1
            continue
        end, caps = first
        out.append(((start, end), dict(sorted(caps.items()))))
        start = end
    return out
