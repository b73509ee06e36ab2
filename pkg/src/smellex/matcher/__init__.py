"""Pattern execution against tagged sentences.

Two interchangeable engines run the compiled programs: a Cython
extension (built at install time) and a pure-Python twin.  Import picks
the compiled one when present; set SMELLEX_ENGINE=python or =cython to
force a choice, and see ``benches/bench_matcher.py`` for a comparison.

Matching semantics: start positions are scanned left to right; elements
match greedily with backtracking; literals compare against lowercased
surface forms; matches never overlap (scanning resumes after each
match's end) and zero-width matches are discarded.  Output order is
deterministic.  Quantified captures record their last iteration;
captures that consumed no tokens are dropped.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Mapping, TextIO

from ..corpus import Corpus, TaggedSentence
from ..errors import SmellexError
from ..pattern_dsl import PatternAst, PatternRecord
from .program import CompiledPattern, Program, compile_pattern, compile_record

from . import _engine_py

try:
    from . import _engine_cy
except ImportError:
    _engine_cy = None

_ENGINES = {"python": _engine_py}
if _engine_cy is not None:
    _ENGINES["cython"] = _engine_cy


def available_engines() -> tuple[str, ...]:
    return tuple(sorted(_ENGINES))


def get_engine(name: str):
    try:
        return _ENGINES[name]
    except KeyError:
        raise SmellexError(
            "unknown matcher engine %r (available: %s)"
            % (name, ", ".join(available_engines()))
        ) from None


def _select_default():
    forced = os.environ.get("SMELLEX_ENGINE")
    if forced:
        return get_engine(forced)
    return _ENGINES.get("cython", _engine_py)


_default_engine = _select_default()


def active_engine_name() -> str:
    return _default_engine.ENGINE_NAME


@dataclass(frozen=True)
class CaptureSpan:
    index: int
    span: tuple[int, int]
    text: str


@dataclass(frozen=True)
class Match:
    pattern_id: str
    doc_id: str
    sent_index: int
    span: tuple[int, int]
    captures: tuple[CaptureSpan, ...] = ()

    def __post_init__(self):
        s, e = self.span
        if not e > s:
            raise SmellexError("empty match span %r" % (self.span,))
        for cap in self.captures:
            cs, ce = cap.span
            if not (s <= cs < ce <= e):
                raise SmellexError(
                    "capture span %r outside match span %r" % (cap.span, self.span)
                )

    @property
    def key(self) -> tuple[str, int]:
        return (self.doc_id, self.sent_index)

    def sort_key(self):
        return (self.doc_id, self.sent_index, self.pattern_id, self.span)


def _build_matches(
    compiled: CompiledPattern, sentence: TaggedSentence, raw
) -> list[Match]:
    n_caps = compiled.program.n_captures
    out = []
    for start, end, slots in raw:
        captures = []
        for k in range(n_caps):
            cs, ce = slots[2 * k], slots[2 * k + 1]
            if cs >= 0 and ce > cs:
                text = " ".join(t.text for t in sentence.tokens[cs:ce])
                captures.append(CaptureSpan(k, (cs, ce), text))
        out.append(
            Match(
                pattern_id=compiled.id,
                doc_id=sentence.doc_id,
                sent_index=sentence.sent_index,
                span=(start, end),
                captures=tuple(captures),
            )
        )
    return out


def match_sentence(
    compiled: CompiledPattern, sentence: TaggedSentence, engine=None
) -> list[Match]:
    eng = engine or _default_engine
    raw = eng.find_matches(
        compiled.program,
        sentence.lower_forms,
        sentence.lemmas,
        sentence.pos_codes,
        sentence.deps,
    )
    return _build_matches(compiled, sentence, raw)


def match_corpus(
    records: Iterable[PatternRecord],
    corpus: Corpus,
    groups: Mapping,
    engine=None,
) -> list[Match]:
    """Union of match_sentence over all (pattern, sentence) pairs.

    Binding errors surface before any matching.  Output is stably
    ordered by (doc_id, sent_index, pattern_id, span).
    """
    compiled = [compile_record(rec, groups) for rec in records]
    out: list[Match] = []
    for sentence in corpus.sentences():
        for cp in compiled:
            out.extend(match_sentence(cp, sentence, engine))
    out.sort(key=Match.sort_key)
    return out


def write_matches(matches: Iterable[Match], fh: TextIO) -> None:
    """TSV dump: pattern_id, doc_id, sent_index, start, end, capture texts."""
    for m in matches:
        by_index = {c.index: c.text for c in m.captures}
        fh.write(
            "\t".join(
                (
                    m.pattern_id,
                    m.doc_id,
                    str(m.sent_index),
                    str(m.span[0]),
                    str(m.span[1]),
                    by_index.get(0, ""),
                    by_index.get(1, ""),
                )
            )
            + "\n"
        )


__all__ = [
    "CaptureSpan",
    "CompiledPattern",
    "Match",
    "Program",
    "active_engine_name",
    "available_engines",
    "compile_pattern",
    "compile_record",
    "get_engine",
    "match_corpus",
    "match_sentence",
    "write_matches",
]
