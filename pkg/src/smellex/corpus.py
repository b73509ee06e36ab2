"""Corpus model and ingestion.

Documents are ordered lists of tagged sentences; sentences are ordered
lists of tokens carrying a surface form, a lowercase lemma, a universal
POS tag and an optional dependency label.  Corpora are immutable after
load and safe to share across threads.

Tagged corpus file format (TSV, UTF-8)::

    # doc_id = some-text
    FORM<TAB>LEMMA<TAB>UPOS<TAB>DEP

with ``_`` for an absent LEMMA or DEP, a blank line terminating each
sentence and ``# doc_id = ...`` comment lines starting a new document.
This is a compatible subset of the usual treebank column layouts.

A naive plain-text ingester is provided for smoke tests only: it splits
sentences on ``.!?`` + whitespace + capital, tokenises on whitespace and
punctuation, and tags every token ``X``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from random import Random
from typing import Iterable, Iterator, TextIO

from .errors import CorpusError

# The 17-tag universal POS set.  Ingested tags outside it are rejected,
# never coerced: pattern semantics must be unambiguous.
UPOS_TAGS = (
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
)
POS_CODE = {tag: i for i, tag in enumerate(UPOS_TAGS)}

ROLE_HARVESTING = "harvesting"
ROLE_VALIDATION = "validation"
ROLE_EVALUATION = "evaluation"
ROLE_UNASSIGNED = "unassigned"
ROLES = (ROLE_HARVESTING, ROLE_VALIDATION, ROLE_EVALUATION, ROLE_UNASSIGNED)

_ABSENT = "_"


@dataclass(frozen=True)
class Token:
    index: int
    text: str
    lemma: str
    pos: str
    dep: str | None = None

    def __post_init__(self):
        if not self.text:
            raise CorpusError("token text must be non-empty")
        if self.pos not in POS_CODE:
            raise CorpusError("unknown POS tag %r" % self.pos)


@dataclass(frozen=True)
class TaggedSentence:
    doc_id: str
    sent_index: int
    tokens: tuple[Token, ...]

    def __post_init__(self):
        if not self.tokens:
            raise CorpusError("sentence must have at least one token")
        for i, tok in enumerate(self.tokens):
            if tok.index != i:
                raise CorpusError(
                    "token indices must be dense and consecutive "
                    "(got %d at position %d)" % (tok.index, i)
                )

    @property
    def key(self) -> tuple[str, int]:
        return (self.doc_id, self.sent_index)

    @property
    def text(self) -> str:
        return " ".join(t.text for t in self.tokens)

    # Primitive per-token arrays, cached for the matcher's inner loop.
    @cached_property
    def lower_forms(self) -> tuple[str, ...]:
        return tuple(t.text.lower() for t in self.tokens)

    @cached_property
    def lemmas(self) -> tuple[str, ...]:
        return tuple(t.lemma for t in self.tokens)

    @cached_property
    def pos_codes(self) -> tuple[int, ...]:
        return tuple(POS_CODE[t.pos] for t in self.tokens)

    @cached_property
    def deps(self) -> tuple[str | None, ...]:
        return tuple(t.dep for t in self.tokens)


@dataclass(frozen=True)
class Document:
    doc_id: str
    sentences: tuple[TaggedSentence, ...]


@dataclass(frozen=True)
class Corpus:
    name: str
    documents: tuple[Document, ...]
    role: str = ROLE_UNASSIGNED

    def __post_init__(self):
        if self.role not in ROLES:
            raise CorpusError("unknown corpus role %r" % self.role)
        seen = set()
        for doc in self.documents:
            if doc.doc_id in seen:
                raise CorpusError("duplicate doc_id %r" % doc.doc_id)
            seen.add(doc.doc_id)

    def __len__(self) -> int:
        return len(self.documents)

    @property
    def sentence_count(self) -> int:
        return sum(len(d.sentences) for d in self.documents)

    def sentences(self) -> Iterator[TaggedSentence]:
        for doc in self.documents:
            yield from doc.sentences

    @cached_property
    def _index(self) -> dict[tuple[str, int], TaggedSentence]:
        return {s.key: s for s in self.sentences()}

    def sentence(self, doc_id: str, sent_index: int) -> TaggedSentence:
        try:
            return self._index[(doc_id, sent_index)]
        except KeyError:
            raise CorpusError(
                "no sentence %r/%d in corpus %r" % (doc_id, sent_index, self.name)
            ) from None

    def universe(self) -> set[tuple[str, int]]:
        """All (doc_id, sent_index) keys; the evaluation universe."""
        return set(self._index)

    def with_role(self, role: str) -> "Corpus":
        return Corpus(self.name, self.documents, role)


_DOC_COMMENT = re.compile(r"#\s*doc_id\s*=\s*(.+?)\s*$")


def _build_sentence(doc_id: str, sent_index: int, rows: list[tuple]) -> TaggedSentence:
    tokens = []
    for i, (form, lemma, upos, dep) in enumerate(rows):
        lemma = form.lower() if lemma == _ABSENT else lemma.lower()
        dep = None if dep == _ABSENT else dep
        tokens.append(Token(i, form, lemma, upos, dep))
    return TaggedSentence(doc_id, sent_index, tuple(tokens))


def read_tagged(fh: TextIO, name: str, default_doc_id: str | None = None) -> Corpus:
    """Parse the tagged TSV format from an open file."""
    documents: list[Document] = []
    cur_doc: str | None = None
    cur_sentences: list[TaggedSentence] = []
    cur_rows: list[tuple] = []

    def flush_sentence():
        nonlocal cur_doc
        if not cur_rows:
            return
        doc = cur_doc if cur_doc is not None else (default_doc_id or name)
        cur_doc = doc
        cur_sentences.append(_build_sentence(doc, len(cur_sentences), cur_rows))
        cur_rows.clear()

    def flush_document():
        flush_sentence()
        if cur_sentences:
            documents.append(Document(cur_doc, tuple(cur_sentences)))
            cur_sentences.clear()

    for lineno, raw in enumerate(fh, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if line.startswith("#"):
            m = _DOC_COMMENT.match(line)
            if m:
                flush_document()
                cur_doc = m.group(1)
            continue
        if not line.strip():
            flush_sentence()
            continue
        cols = line.split("\t")
        if len(cols) != 4:
            raise CorpusError(
                "line %d: expected 4 tab-separated columns "
                "(FORM LEMMA UPOS DEP), got %d" % (lineno, len(cols))
            )
        form, lemma, upos, dep = cols
        if upos not in POS_CODE:
            raise CorpusError("line %d: unknown POS tag %r" % (lineno, upos))
        if not form:
            raise CorpusError("line %d: empty FORM column" % lineno)
        cur_rows.append((form, lemma, upos, dep))
    flush_document()
    return Corpus(name, tuple(documents))


def load_tagged(path: str | Path, name: str | None = None) -> Corpus:
    """Load a tagged TSV corpus from *path*."""
    path = Path(path)
    corpus_name = name if name is not None else path.stem
    with open(path, encoding="utf-8") as fh:
        return read_tagged(fh, corpus_name, default_doc_id=path.stem)


def write_tagged(corpus: Corpus, fh: TextIO) -> None:
    for doc in corpus.documents:
        fh.write("# doc_id = %s\n" % doc.doc_id)
        for sent in doc.sentences:
            for tok in sent.tokens:
                lemma = _ABSENT if tok.lemma == tok.text.lower() else tok.lemma
                dep = tok.dep if tok.dep is not None else _ABSENT
                fh.write("%s\t%s\t%s\t%s\n" % (tok.text, lemma, tok.pos, dep))
            fh.write("\n")


def save_tagged(corpus: Corpus, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        write_tagged(corpus, fh)


def split_corpus(
    corpus: Corpus, sizes: tuple[int, int, int], seed: int
) -> tuple[Corpus, Corpus, Corpus]:
    """Deterministically partition documents into harvesting/validation/evaluation.

    Documents are assigned whole.  Raises CorpusError when the sizes do not
    sum to the document count.
    """
    h, v, e = sizes
    if h < 0 or v < 0 or e < 0 or h + v + e != len(corpus):
        raise CorpusError(
            "split sizes %r do not sum to corpus size %d" % (sizes, len(corpus))
        )
    docs = list(corpus.documents)
    Random(seed).shuffle(docs)
    parts = (docs[:h], docs[h : h + v], docs[h + v :])
    roles = (ROLE_HARVESTING, ROLE_VALIDATION, ROLE_EVALUATION)
    return tuple(
        Corpus("%s-%s" % (corpus.name, role), tuple(part), role)
        for part, role in zip(parts, roles)
    )


_SENT_BOUNDARY = re.compile(r"(?<=[.!?])\s+(?=[A-Z])")
_WORDISH = re.compile(r"\w+(?:[-']\w+)*|[^\w\s]")


def ingest_plain(text: str, name: str, doc_id: str | None = None) -> Corpus:
    """Naive plain-text ingestion: X-tagged tokens, for smoke tests only."""
    doc_id = doc_id or name
    sentences = []
    for chunk in _SENT_BOUNDARY.split(text):
        forms = _WORDISH.findall(chunk)
        if not forms:
            continue
        tokens = tuple(
            Token(i, form, form.lower(), "X") for i, form in enumerate(forms)
        )
        sentences.append(TaggedSentence(doc_id, len(sentences), tokens))
    if not sentences:
        raise CorpusError("no sentences found in plain text input")
    return Corpus(name, (Document(doc_id, tuple(sentences)),))


def load_plain(path: str | Path, name: str | None = None) -> Corpus:
    path = Path(path)
    corpus_name = name if name is not None else path.stem
    return ingest_plain(path.read_text(encoding="utf-8"), corpus_name)
