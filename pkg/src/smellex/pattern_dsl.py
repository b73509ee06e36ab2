"""The lexico-syntactic pattern language.

Grammar (EBNF)::

    pattern := element+
    element := atom quant?
    quant   := '*'
    atom    := '[' element+ ']'      capture
             | '{' element+ '}'      group
             | literal               _word_ or _w1|w2_  (lowercased words)
             | '<' ident '>'         chunk class or synonym group reference
             | '__' POSTAG           POS wildcard, e.g. __DET
             | ident '__'            dependency wildcard, e.g. compound__

``<ident>`` resolves to a built-in chunk class when ident is one of
adj / noun / verb / pronoun, otherwise to a synonym group whose
resolution is deferred to compile time.  ``prep__`` is an accepted alias
that normalizes to the POS wildcard ``__ADP`` (prepositions are a POS,
not a dependency), so the canonical rendering of a parsed ``prep__*``
is ``__ADP*``.

A group that carries no ``*`` is normalized away (its elements are
spliced into the parent); captures may not nest inside captures; capture
indices are dense from 0 in source order.  Parsing is pure and ASTs are
immutable, so they can be shared freely.

Pattern exchange file format: one pattern per line,
``id<TAB>kind<TAB>approach<TAB>DSL``, ``#`` comments allowed.  Trailing
optional columns (status, estimated precision, origin cycle, exempt
flag) are accepted so bootstrap state files stay readable here.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, TextIO, Union

from .corpus import POS_CODE
from .errors import PatternSyntaxError, SmellexError

CHUNK_CLASSES = ("adj", "noun", "verb", "pronoun")
KINDS = ("identification", "extraction")
APPROACHES = ("adj_noun", "verb_noun", "none")
COMPLEMENT_CLASSES = {
    "adj_noun": frozenset(("adj", "noun")),
    "verb_noun": frozenset(("noun", "verb")),
}


class PatternKindError(SmellexError):
    """A pattern record's kind does not fit its captures."""


@dataclass(frozen=True)
class Literal:
    words: tuple[str, ...]
    star: bool = False


@dataclass(frozen=True)
class ChunkRef:
    chunk: str
    star: bool = False


@dataclass(frozen=True)
class SynRef:
    group: str
    star: bool = False


@dataclass(frozen=True)
class PosWildcard:
    tag: str
    star: bool = False


@dataclass(frozen=True)
class DepWildcard:
    label: str
    star: bool = False


@dataclass(frozen=True)
class Capture:
    elements: tuple["Element", ...]
    index: int
    star: bool = False


@dataclass(frozen=True)
class Group:
    elements: tuple["Element", ...]
    star: bool = True


Element = Union[Literal, ChunkRef, SynRef, PosWildcard, DepWildcard, Capture, Group]


@dataclass(frozen=True)
class PatternAst:
    elements: tuple[Element, ...]

    def __post_init__(self):
        if not self.elements:
            raise PatternSyntaxError("pattern must have at least one element", 1)

    def walk(self) -> Iterator[Element]:
        yield from _walk(self.elements)

    def captures(self) -> tuple[Capture, ...]:
        caps = [el for el in self.walk() if isinstance(el, Capture)]
        return tuple(sorted(caps, key=lambda c: c.index))


def _walk(elements: Iterable[Element]) -> Iterator[Element]:
    for el in elements:
        yield el
        if isinstance(el, (Capture, Group)):
            yield from _walk(el.elements)


# ---------------------------------------------------------------------------
# Lexer

_LBRACK, _RBRACK, _LBRACE, _RBRACE, _STAR = "[", "]", "{", "}", "*"


def _lex(source: str) -> list[tuple[str, object, int]]:
    """Tokenize into (kind, value, 1-based column) triples."""
    out = []
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        col = i + 1
        if ch.isspace():
            i += 1
        elif ch in "[]{}*":
            out.append((ch, ch, col))
            i += 1
        elif ch == "<":
            j = source.find(">", i + 1)
            if j < 0:
                raise PatternSyntaxError("missing '>' after '<'", col)
            name = source[i + 1 : j]
            if not name or not all(c.isalnum() or c == "_" for c in name):
                raise PatternSyntaxError("bad reference name %r" % name, col)
            out.append(("angle", name.lower(), col))
            i = j + 1
        elif ch == "_":
            if i + 1 < n and source[i + 1] == "_":
                j = i + 2
                while j < n and source[j].isalpha() and source[j].isupper():
                    j += 1
                tag = source[i + 2 : j]
                if not tag:
                    raise PatternSyntaxError("expected POS tag after '__'", col)
                if tag not in POS_CODE:
                    raise PatternSyntaxError("unknown POS tag %r" % tag, col)
                out.append(("pos", tag, col))
                i = j
            else:
                j = source.find("_", i + 1)
                if j < 0:
                    raise PatternSyntaxError("unterminated literal", col)
                body = source[i + 1 : j]
                words = tuple(w.strip().lower() for w in body.split("|"))
                if not body or any(not w for w in words):
                    raise PatternSyntaxError("empty literal", col)
                out.append(("lit", words, col))
                i = j + 1
        elif ch.isalpha() and ch.islower():
            j = i
            while j < n and (source[j].isalnum() and not source[j].isupper()):
                j += 1
            label = source[i:j]
            if not source.startswith("__", j):
                raise PatternSyntaxError(
                    "bare word %r (literals are written _word_, "
                    "dependency wildcards label__)" % label,
                    col,
                )
            out.append(("dep", label, col))
            i = j + 2
        else:
            raise PatternSyntaxError("unexpected character %r" % ch, col)
    return out


# ---------------------------------------------------------------------------
# Parser

def _parse_elements(tokens, i, closer, opener_col, in_capture):
    elements: list[Element] = []
    while True:
        if i >= len(tokens):
            if closer is not None:
                raise PatternSyntaxError(
                    "unbalanced %r" % ("[" if closer == _RBRACK else "{"),
                    opener_col,
                )
            break
        kind, value, col = tokens[i]
        if kind in (_RBRACK, _RBRACE):
            if kind != closer:
                raise PatternSyntaxError("unbalanced %r" % kind, col)
            i += 1
            break
        if kind == _STAR:
            if not elements:
                raise PatternSyntaxError("quantifier '*' without an element", col)
            prev = elements[-1]
            if prev.star:
                raise PatternSyntaxError("duplicate quantifier '*'", col)
            elements[-1] = dataclasses.replace(prev, star=True)
            i += 1
            continue
        if kind == _LBRACK:
            if in_capture:
                raise PatternSyntaxError("captures may not nest inside captures", col)
            inner, i = _parse_elements(tokens, i + 1, _RBRACK, col, True)
            if not inner:
                raise PatternSyntaxError("empty capture", col)
            elements.append(Capture(tuple(inner), index=-1))
            continue
        if kind == _LBRACE:
            inner, i = _parse_elements(tokens, i + 1, _RBRACE, col, in_capture)
            if not inner:
                raise PatternSyntaxError("empty group", col)
            elements.append(Group(tuple(inner), star=False))
            continue
        if kind == "lit":
            elements.append(Literal(value))
        elif kind == "pos":
            elements.append(PosWildcard(value))
        elif kind == "dep":
            if value == "prep":
                elements.append(PosWildcard("ADP"))
            else:
                elements.append(DepWildcard(value))
        elif kind == "angle":
            if value in CHUNK_CLASSES:
                elements.append(ChunkRef(value))
            else:
                elements.append(SynRef(value))
        i += 1
    return elements, i


def _normalize(elements: list[Element]) -> list[Element]:
    """Splice unstarred groups into their parent, recursively."""
    out: list[Element] = []
    for el in elements:
        if isinstance(el, Group):
            inner = _normalize(list(el.elements))
            if el.star:
                out.append(Group(tuple(inner), star=True))
            else:
                out.extend(inner)
        elif isinstance(el, Capture):
            out.append(
                Capture(tuple(_normalize(list(el.elements))), el.index, el.star)
            )
        else:
            out.append(el)
    return out


def _number_captures(elements: list[Element], counter: list[int]) -> list[Element]:
    out: list[Element] = []
    for el in elements:
        if isinstance(el, Capture):
            idx = counter[0]
            counter[0] += 1
            out.append(
                Capture(
                    tuple(_number_captures(list(el.elements), counter)), idx, el.star
                )
            )
        elif isinstance(el, Group):
            out.append(
                Group(tuple(_number_captures(list(el.elements), counter)), el.star)
            )
        else:
            out.append(el)
    return out


def parse_pattern(source: str) -> PatternAst:
    """Parse a DSL string into an immutable AST."""
    tokens = _lex(source)
    if not tokens:
        raise PatternSyntaxError("empty pattern", 1)
    elements, _ = _parse_elements(tokens, 0, None, 0, False)
    elements = _number_captures(_normalize(elements), [0])
    return PatternAst(tuple(elements))


# ---------------------------------------------------------------------------
# Rendering

def _render_element(el: Element) -> str:
    star = "*" if el.star else ""
    if isinstance(el, Literal):
        return "_%s_%s" % ("|".join(el.words), star)
    if isinstance(el, ChunkRef):
        return "<%s>%s" % (el.chunk, star)
    if isinstance(el, SynRef):
        return "<%s>%s" % (el.group, star)
    if isinstance(el, PosWildcard):
        return "__%s%s" % (el.tag, star)
    if isinstance(el, DepWildcard):
        return "%s__%s" % (el.label, star)
    if isinstance(el, Capture):
        return "[%s]%s" % (" ".join(_render_element(e) for e in el.elements), star)
    if isinstance(el, Group):
        return "{%s}%s" % (" ".join(_render_element(e) for e in el.elements), star)
    raise TypeError("not a pattern element: %r" % (el,))


def render_pattern(ast: PatternAst) -> str:
    """Canonical DSL string; parse(render(ast)) == ast."""
    return " ".join(_render_element(el) for el in ast.elements)


# ---------------------------------------------------------------------------
# Classification

def capture_complement_class(capture: Capture) -> str | None:
    """The unique complement chunk class inside a capture, if any.

    Pronoun chunks are not complements and are ignored.
    """
    classes = {
        el.chunk
        for el in _walk(capture.elements)
        if isinstance(el, ChunkRef) and el.chunk != "pronoun"
    }
    if len(classes) == 1:
        return next(iter(classes))
    return None


def classify_pattern(ast: PatternAst, approach: str) -> str:
    """'extraction' when the captures yield this approach's feature pair.

    Extraction-eligible means exactly two captures whose complement
    classes are the approach's pair (adjective + noun group, or noun
    group + verb group); anything else is identification-only.
    """
    required = COMPLEMENT_CLASSES.get(approach)
    if required is None:
        raise SmellexError("unknown approach %r" % approach)
    caps = ast.captures()
    if len(caps) != 2:
        return "identification"
    classes = [capture_complement_class(c) for c in caps]
    if None in classes or classes[0] == classes[1]:
        return "identification"
    return "extraction" if set(classes) == required else "identification"


def capture_class_map(ast: PatternAst) -> dict[int, str | None]:
    return {c.index: capture_complement_class(c) for c in ast.captures()}


# ---------------------------------------------------------------------------
# Pattern records and files

@dataclass(frozen=True)
class PatternRecord:
    id: str
    source: str
    ast: PatternAst
    kind: str
    approach: str
    estimated_precision: float | None = None
    status: str = "hypothesized"
    exempt: bool = False
    origin_cycle: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PatternKindError("unknown pattern kind %r" % self.kind)
        if self.approach not in APPROACHES:
            raise PatternKindError("unknown approach %r" % self.approach)
        if self.status not in ("hypothesized", "validated", "rejected", "removed"):
            raise PatternKindError("unknown status %r" % self.status)
        if self.estimated_precision is not None and not (
            0.0 <= self.estimated_precision <= 1.0
        ):
            raise PatternKindError(
                "estimated precision %r outside [0, 1]" % self.estimated_precision
            )
        if self.kind == "extraction":
            if self.approach == "none":
                raise PatternKindError("extraction patterns need an approach")
            if classify_pattern(self.ast, self.approach) != "extraction":
                raise PatternKindError(
                    "pattern %r is not extraction-eligible for approach %s: "
                    "it needs exactly two captures with the %s complement classes"
                    % (self.id, self.approach,
                       "/".join(sorted(COMPLEMENT_CLASSES[self.approach])))
                )


def make_record(
    id: str,
    source: str,
    kind: str,
    approach: str,
    **kwargs,
) -> PatternRecord:
    return PatternRecord(id, source, parse_pattern(source), kind, approach, **kwargs)


def read_patterns(fh: TextIO) -> list[PatternRecord]:
    records = []
    for lineno, raw in enumerate(fh, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) < 4:
            raise SmellexError(
                "pattern line %d: expected at least 4 columns, got %d"
                % (lineno, len(cols))
            )
        pid, kind, approach, source = cols[:4]
        extra: dict = {}
        if len(cols) > 4 and cols[4]:
            extra["status"] = cols[4]
        if len(cols) > 5 and cols[5] not in ("", "_"):
            extra["estimated_precision"] = float(cols[5])
        if len(cols) > 6 and cols[6] not in ("", "_"):
            extra["origin_cycle"] = int(cols[6])
        if len(cols) > 7 and cols[7]:
            extra["exempt"] = cols[7] == "1"
        try:
            records.append(make_record(pid, source, kind, approach, **extra))
        except PatternSyntaxError as err:
            raise PatternSyntaxError(
                "pattern %r (line %d): %s" % (pid, lineno, err.args[0]), err.column
            ) from err
    return records


def write_patterns(records: Iterable[PatternRecord], fh: TextIO, extended: bool = False) -> None:
    for rec in records:
        row = [rec.id, rec.kind, rec.approach, render_pattern(rec.ast)]
        if extended:
            precision = "_" if rec.estimated_precision is None else (
                "%.6f" % rec.estimated_precision
            )
            cycle = "_" if rec.origin_cycle is None else str(rec.origin_cycle)
            row += [rec.status, precision, cycle, "1" if rec.exempt else "0"]
        fh.write("\t".join(row) + "\n")


def load_patterns(path: str | Path) -> list[PatternRecord]:
    with open(path, encoding="utf-8") as fh:
        return read_patterns(fh)


def save_patterns(records: Iterable[PatternRecord], path: str | Path, extended: bool = False) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        write_patterns(records, fh, extended)
