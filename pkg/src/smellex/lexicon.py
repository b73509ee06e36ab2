"""Bootstrapping lexicon: synonym groups, features, and the seen ledger.

The lexicon holds two kinds of feature entries.  A Single is one
(lemma, POS) word feature; a Pair is two coincident complements (the
unit the bootstrap harvests), matched as contiguous lowercased token
subsequences that may appear in either order within one sentence.
Entries are unique across all cycles; duplicates are skipped silently.

The ExtractLedger records every sentence ever surfaced as an extract so
each cycle only returns new (unseen) ones.  Ledger and lexicon only ever
grow.

Persistence is line-oriented TSV: Singles as
``S<TAB>lemma<TAB>POS<TAB>cycle`` and Pairs as
``P<TAB>approach<TAB>a<TAB>b<TAB>cycle<TAB>pattern_id``;
synonym groups as ``name<TAB>lemma<TAB>POS`` lines.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, TextIO, Union

from .corpus import POS_CODE, Corpus, ROLE_HARVESTING, TaggedSentence
from .errors import CorpusError, SmellexError
from .keywords import KeywordLexicon

PAIR_APPROACHES = ("adj_noun", "verb_noun")


@dataclass(frozen=True)
class SynonymGroup:
    name: str
    members: frozenset  # of (lemma, POS tag)

    def __post_init__(self):
        if not self.members:
            raise SmellexError("synonym group %r has no members" % self.name)
        for lemma, pos in self.members:
            if pos not in POS_CODE:
                raise SmellexError(
                    "synonym group %r member %r has unknown POS %r"
                    % (self.name, lemma, pos)
                )


@dataclass(frozen=True)
class Single:
    lemma: str
    pos: str


@dataclass(frozen=True)
class Pair:
    approach: str
    a: str  # adj_noun: adjective text / verb_noun: noun group text
    b: str  # adj_noun: noun group text / verb_noun: verb group text

    def __post_init__(self):
        if self.approach not in PAIR_APPROACHES:
            raise SmellexError("unknown pair approach %r" % self.approach)
        if not self.a.strip() or not self.b.strip():
            raise SmellexError("pair complements must be non-empty")


EntryForm = Union[Single, Pair]


@dataclass(frozen=True)
class LexiconEntry:
    form: EntryForm
    origin_cycle: int = 0
    origin_pattern: str | None = None


@dataclass(frozen=True)
class Extract:
    """A sentence surfaced for review, with its trigger and highlight spans.

    span_labels runs parallel to spans ("feature" for lexicon triggers;
    "match" plus capture complement classes for pattern samples) so
    clients can label highlights without re-deriving them.
    """

    doc_id: str
    sent_index: int
    text: str
    source: str
    spans: tuple[tuple[int, int], ...] = ()
    span_labels: tuple[str, ...] = ()

    @property
    def key(self) -> tuple[str, int]:
        return (self.doc_id, self.sent_index)


class Lexicon:
    def __init__(
        self,
        groups: Mapping[str, SynonymGroup] | None = None,
        entries: Iterable[LexiconEntry] = (),
    ):
        self.groups: dict[str, SynonymGroup] = dict(groups or {})
        self._entries: dict[EntryForm, LexiconEntry] = {}
        self.add_entries(entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, form: EntryForm) -> bool:
        return form in self._entries

    def entries(self) -> list[LexiconEntry]:
        return list(self._entries.values())

    def singles(self) -> list[LexiconEntry]:
        return [e for e in self._entries.values() if isinstance(e.form, Single)]

    def pairs(self) -> list[LexiconEntry]:
        return [e for e in self._entries.values() if isinstance(e.form, Pair)]

    def add_entries(self, entries: Iterable[LexiconEntry]) -> int:
        """Add entries, skipping duplicates; returns how many were new."""
        added = 0
        for entry in entries:
            if entry.form not in self._entries:
                self._entries[entry.form] = entry
                added += 1
        return added


class ExtractLedger:
    def __init__(self, seen: Iterable[tuple[str, int]] = ()):
        self.seen: set[tuple[str, int]] = set(seen)

    def __len__(self) -> int:
        return len(self.seen)

    def __contains__(self, key: tuple[str, int]) -> bool:
        return key in self.seen

    def mark(self, keys: Iterable[tuple[str, int]]) -> None:
        self.seen.update(keys)


def _find_subseq(lows: tuple[str, ...], words: tuple[str, ...]) -> tuple[int, int] | None:
    k = len(words)
    if k == 0 or k > len(lows):
        return None
    for i in range(len(lows) - k + 1):
        if lows[i : i + k] == words:
            return (i, i + k)
    return None


def _single_span(sentence: TaggedSentence, entry: Single) -> tuple[int, int] | None:
    for i, tok in enumerate(sentence.tokens):
        if tok.pos == entry.pos and (
            tok.lemma == entry.lemma or sentence.lower_forms[i] == entry.lemma
        ):
            return (i, i + 1)
    return None


def _pair_spans(sentence: TaggedSentence, entry: Pair):
    lows = sentence.lower_forms
    span_a = _find_subseq(lows, tuple(entry.a.split()))
    if span_a is None:
        return None
    span_b = _find_subseq(lows, tuple(entry.b.split()))
    if span_b is None:
        return None
    return (span_a, span_b)


def _sentence_trigger(sentence: TaggedSentence, singles, pairs):
    for entry in singles:
        span = _single_span(sentence, entry.form)
        if span is not None:
            return ("single:%s/%s" % (entry.form.lemma, entry.form.pos), (span,))
    for entry in pairs:
        spans = _pair_spans(sentence, entry.form)
        if spans is not None:
            return ("pair:%s+%s" % (entry.form.a, entry.form.b), spans)
    return None


def find_feature_extracts(
    lexicon: Lexicon, corpus: Corpus, ledger: ExtractLedger
) -> list[Extract]:
    """New (unseen) sentences containing a Single or both members of a Pair.

    The result is independent of entry insertion order (entries are
    probed in sorted order) and every returned sentence is marked seen.
    """
    if corpus.role != ROLE_HARVESTING:
        raise SmellexError(
            "feature retrieval runs on the harvesting corpus, got role %r"
            % corpus.role
        )
    singles = sorted(lexicon.singles(), key=lambda e: (e.form.lemma, e.form.pos))
    pairs = sorted(lexicon.pairs(), key=lambda e: (e.form.approach, e.form.a, e.form.b))
    out = []
    for sentence in corpus.sentences():
        if sentence.key in ledger:
            continue
        hit = _sentence_trigger(sentence, singles, pairs)
        if hit is None:
            continue
        source, spans = hit
        out.append(
            Extract(
                sentence.doc_id,
                sentence.sent_index,
                sentence.text,
                source,
                spans,
                ("feature",) * len(spans),
            )
        )
    ledger.mark(e.key for e in out)
    return out


DEFAULT_SEED_ENTRIES = (LexiconEntry(Single("aroma", "NOUN")),)


def default_synonym_groups(kw: KeywordLexicon) -> dict[str, SynonymGroup]:
    """Synonym groups induced from the keyword lexicon's POS letters."""
    by_pos = {"NOUN": set(), "VERB": set(), "ADJ": set()}
    for entry in kw.entries:
        for pos in entry.pos_set:
            if pos in by_pos:
                by_pos[pos].add((entry.lemma, pos))
    names = {"NOUN": "smell_noun", "VERB": "smell_verb", "ADJ": "smell_adj"}
    return {
        names[pos]: SynonymGroup(names[pos], frozenset(members))
        for pos, members in by_pos.items()
        if members
    }


# ---------------------------------------------------------------------------
# Persistence

def write_lexicon(lexicon: Lexicon, fh: TextIO) -> None:
    for entry in sorted(
        lexicon.singles(), key=lambda e: (e.form.lemma, e.form.pos)
    ):
        fh.write(
            "S\t%s\t%s\t%d\n" % (entry.form.lemma, entry.form.pos, entry.origin_cycle)
        )
    for entry in sorted(
        lexicon.pairs(), key=lambda e: (e.form.approach, e.form.a, e.form.b)
    ):
        fh.write(
            "P\t%s\t%s\t%s\t%d\t%s\n"
            % (
                entry.form.approach,
                entry.form.a,
                entry.form.b,
                entry.origin_cycle,
                entry.origin_pattern or "_",
            )
        )


def read_lexicon(fh: TextIO, groups: Mapping[str, SynonymGroup] | None = None) -> Lexicon:
    entries = []
    for lineno, raw in enumerate(fh, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if cols[0] == "S" and len(cols) == 4:
            entries.append(
                LexiconEntry(Single(cols[1], cols[2]), origin_cycle=int(cols[3]))
            )
        elif cols[0] == "P" and len(cols) == 6:
            entries.append(
                LexiconEntry(
                    Pair(cols[1], cols[2], cols[3]),
                    origin_cycle=int(cols[4]),
                    origin_pattern=None if cols[5] == "_" else cols[5],
                )
            )
        else:
            raise CorpusError("lexicon line %d: bad row %r" % (lineno, line))
    return Lexicon(groups, entries)


def write_groups(groups: Mapping[str, SynonymGroup], fh: TextIO) -> None:
    for name in sorted(groups):
        for lemma, pos in sorted(groups[name].members):
            fh.write("%s\t%s\t%s\n" % (name, lemma, pos))


def read_groups(fh: TextIO) -> dict[str, SynonymGroup]:
    members: dict[str, set] = {}
    for lineno, raw in enumerate(fh, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise CorpusError("groups line %d: expected 3 columns" % lineno)
        name, lemma, pos = cols
        members.setdefault(name, set()).add((lemma.lower(), pos))
    return {
        name: SynonymGroup(name, frozenset(m)) for name, m in members.items()
    }


def load_groups(path: str | Path) -> dict[str, SynonymGroup]:
    with open(path, encoding="utf-8") as fh:
        return read_groups(fh)


def write_ledger(ledger: ExtractLedger, fh: TextIO) -> None:
    for doc_id, sent_index in sorted(ledger.seen):
        fh.write("%s\t%d\n" % (doc_id, sent_index))


def read_ledger(fh: TextIO) -> ExtractLedger:
    seen = []
    for lineno, raw in enumerate(fh, start=1):
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            raise CorpusError("ledger line %d: expected 2 columns" % lineno)
        seen.append((cols[0], int(cols[1])))
    return ExtractLedger(seen)
