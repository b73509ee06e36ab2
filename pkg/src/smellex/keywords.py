"""Smell keyword lexicon and keyword scanning.

The bundled lexicon transcribes the Cambridge "smells and smelling"
vocabulary: each entry is a lemma, the POS letters it carries (N, V, A,
ADV) and its connotation flags (strength / sentiment / characteristic).

Entries are lemmas, so the scanner optionally expands regular English
inflections: nouns get plural forms, verbs get -s/-ed/-ing forms (with
e-drop and consonant doubling), adjectives and adverbs are kept as-is.
The same scan backs both the keyword baseline and extract sifting.

File format, one entry per line::

    lemma<TAB>POS letters (N|V|A|ADV, comma-separated)<TAB>flags or _

POS agreement: a token whose tag is one of the four open classes must
match one of the entry's POS letters; tokens tagged outside those
classes (e.g. the X tag of naively ingested text) match lexically.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, TextIO

from .corpus import TaggedSentence
from .errors import CorpusError

_POS_LETTER = {"N": "NOUN", "V": "VERB", "A": "ADJ", "ADV": "ADV"}
_POS_UNLETTER = {v: k for k, v in _POS_LETTER.items()}
FLAGS = ("strength", "sentiment", "characteristic")
OPEN_CLASSES = frozenset(("NOUN", "VERB", "ADJ", "ADV"))

_VOWELS = "aeiou"


def _s_form(word: str) -> str:
    if word.endswith(("s", "x", "z", "ch", "sh")):
        return word + "es"
    if len(word) > 1 and word.endswith("y") and word[-2] not in _VOWELS:
        return word[:-1] + "ies"
    return word + "s"


def _doubles_final(word: str) -> bool:
    # consonant-vowel-consonant ending, final letter not w/x/y
    if len(word) < 3:
        return False
    a, b, c = word[-3], word[-2], word[-1]
    return c not in _VOWELS + "wxy" and b in _VOWELS and a not in _VOWELS


def _ed_form(word: str) -> str:
    if word.endswith("e"):
        return word + "d"
    if len(word) > 1 and word.endswith("y") and word[-2] not in _VOWELS:
        return word[:-1] + "ied"
    if _doubles_final(word):
        return word + word[-1] + "ed"
    return word + "ed"


def _ing_form(word: str) -> str:
    if word.endswith("e") and not word.endswith("ee"):
        return word[:-1] + "ing"
    if _doubles_final(word):
        return word + word[-1] + "ing"
    return word + "ing"


def inflections(lemma: str, pos: str) -> set[str]:
    """Regular inflected surface forms for *lemma* under one POS tag."""
    forms = {lemma}
    if pos == "NOUN":
        forms.add(_s_form(lemma))
    elif pos == "VERB":
        forms.update((_s_form(lemma), _ed_form(lemma), _ing_form(lemma)))
    return forms


@dataclass(frozen=True)
class KeywordEntry:
    lemma: str
    pos_set: frozenset[str]
    flags: frozenset[str]

    def inflected_forms(self) -> set[str]:
        forms = set()
        for pos in self.pos_set:
            forms |= inflections(self.lemma, pos)
        return forms


class KeywordLexicon:
    """Keyword entries plus a form index for O(1) token lookups."""

    def __init__(self, entries: Iterable[KeywordEntry]):
        self.entries = tuple(entries)
        seen = set()
        for entry in self.entries:
            key = (entry.lemma, entry.pos_set)
            if key in seen:
                raise CorpusError("duplicate keyword entry %r" % (key,))
            seen.add(key)
        # exact lemma index and inflection-expanded index
        self._exact: dict[str, list[KeywordEntry]] = {}
        self._expanded: dict[str, list[KeywordEntry]] = {}
        for entry in self.entries:
            self._exact.setdefault(entry.lemma, []).append(entry)
            for form in entry.inflected_forms():
                self._expanded.setdefault(form, []).append(entry)

    def __len__(self) -> int:
        return len(self.entries)

    def inflection_table(self) -> dict[KeywordEntry, set[str]]:
        return {entry: entry.inflected_forms() for entry in self.entries}

    def _token_matches(self, token, expand: bool) -> bool:
        index = self._expanded if expand else self._exact
        for form in (token.text.lower(), token.lemma):
            for entry in index.get(form, ()):
                if token.pos not in OPEN_CLASSES or token.pos in entry.pos_set:
                    return True
        return False

    def scan(self, sentence: TaggedSentence, expand: bool = True) -> bool:
        """True iff any token's surface form or lemma is a keyword."""
        return any(self._token_matches(tok, expand) for tok in sentence.tokens)


def keyword_scan(sentence: TaggedSentence, kw: KeywordLexicon, expand: bool = True) -> bool:
    return kw.scan(sentence, expand)


def read_keywords(fh: TextIO) -> KeywordLexicon:
    entries = []
    for lineno, raw in enumerate(fh, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise CorpusError(
                "keyword line %d: expected 3 columns, got %d" % (lineno, len(cols))
            )
        lemma, letters, flags = cols
        pos_set = set()
        for letter in letters.split(","):
            letter = letter.strip()
            if letter not in _POS_LETTER:
                raise CorpusError(
                    "keyword line %d: unknown POS letter %r" % (lineno, letter)
                )
            pos_set.add(_POS_LETTER[letter])
        flag_set = set()
        if flags != "_":
            for flag in flags.split(","):
                flag = flag.strip()
                if flag not in FLAGS:
                    raise CorpusError(
                        "keyword line %d: unknown flag %r" % (lineno, flag)
                    )
                flag_set.add(flag)
        entries.append(
            KeywordEntry(lemma.lower(), frozenset(pos_set), frozenset(flag_set))
        )
    return KeywordLexicon(entries)


def load_keywords(path: str | Path) -> KeywordLexicon:
    with open(path, encoding="utf-8") as fh:
        return read_keywords(fh)


def write_keywords(kw: KeywordLexicon, fh: TextIO) -> None:
    for entry in kw.entries:
        letters = ",".join(
            sorted(_POS_UNLETTER[p] for p in entry.pos_set)
        )
        flags = ",".join(f for f in FLAGS if f in entry.flags) or "_"
        fh.write("%s\t%s\t%s\n" % (entry.lemma, letters, flags))


def load_default_keywords() -> KeywordLexicon:
    """The bundled smell keyword lexicon."""
    ref = resources.files("smellex.data").joinpath("smell_keywords.tsv")
    with ref.open("r", encoding="utf-8") as fh:
        return read_keywords(fh)
