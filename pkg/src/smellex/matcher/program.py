"""Compilation of pattern ASTs into matcher VM programs.

A compiled pattern is a flat instruction list for a small backtracking
VM (two interchangeable engines execute it: a Cython extension and a
pure-Python twin).  Greedy semantics come from SPLIT preference: the
first branch is always the consuming one, and the engine explores
branches depth-first, so the first complete match is the greedy-leftmost
one.

Built-in chunk grammars, inlined as sub-programs wherever a pattern
references them::

    adj     := ADV* ADJ
    noun    := DET? (ADJ|NOUN|PROPN)* (NOUN|PROPN) (CCONJ (ADJ|NOUN|PROPN)+)*
    verb    := ADV* (VERB|AUX) ADV* (ADP|PART)?
    pronoun := PRON

Each chunk consumes at least one token and is matched greedily with
backtracking.  Starred elements that can match zero tokens get a loop
progress guard so the VM never spins on an empty iteration.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from functools import reduce
from typing import Mapping

from ..corpus import POS_CODE
from ..errors import LexiconBindingError
from ..pattern_dsl import (
    Capture,
    ChunkRef,
    DepWildcard,
    Element,
    Group,
    Literal,
    PatternAst,
    PatternRecord,
    PosWildcard,
    SynRef,
    capture_class_map,
)

OP_TOKEN, OP_SPLIT, OP_JMP, OP_SAVE, OP_SETREG, OP_PROGRESS, OP_MATCH = range(7)
PRED_LIT, PRED_POS, PRED_DEP, PRED_SYN = range(4)


def _mask(*tags: str) -> int:
    return reduce(lambda m, t: m | (1 << POS_CODE[t]), tags, 0)


_ADV = _mask("ADV")
_ADJ = _mask("ADJ")
_DET = _mask("DET")
_NOMINAL = _mask("ADJ", "NOUN", "PROPN")
_NOUNISH = _mask("NOUN", "PROPN")
_CCONJ = _mask("CCONJ")
_VERBISH = _mask("VERB", "AUX")
_PREPISH = _mask("ADP", "PART")
_PRON = _mask("PRON")


@dataclass(frozen=True)
class Program:
    ops: array
    arg_a: array
    arg_b: array
    preds: tuple
    n_captures: int
    n_slots: int
    n_regs: int

    def __len__(self) -> int:
        return len(self.ops)


@dataclass(frozen=True)
class CompiledPattern:
    id: str
    program: Program
    capture_classes: dict
    record: PatternRecord | None = None


class _Builder:
    def __init__(self):
        self.ops: list[int] = []
        self.a: list[int] = []
        self.b: list[int] = []
        self.preds: list = []
        self._pred_index: dict = {}
        self.n_regs = 0

    def here(self) -> int:
        return len(self.ops)

    def emit(self, op: int, a: int = 0, b: int = 0) -> int:
        self.ops.append(op)
        self.a.append(a)
        self.b.append(b)
        return len(self.ops) - 1

    def patch_a(self, idx: int, val: int) -> None:
        self.a[idx] = val

    def patch_b(self, idx: int, val: int) -> None:
        self.b[idx] = val

    def pred(self, kind: int, payload) -> int:
        key = (kind, payload)
        idx = self._pred_index.get(key)
        if idx is None:
            idx = len(self.preds)
            self.preds.append(key)
            self._pred_index[key] = idx
        return idx

    def new_reg(self) -> int:
        self.n_regs += 1
        return self.n_regs - 1

    def finish(self, n_captures: int) -> Program:
        return Program(
            ops=array("i", self.ops),
            arg_a=array("i", self.a),
            arg_b=array("i", self.b),
            preds=tuple(self.preds),
            n_captures=n_captures,
            n_slots=2 * n_captures,
            n_regs=self.n_regs,
        )


def _min_width(el: Element) -> int:
    if el.star:
        return 0
    if isinstance(el, (Capture, Group)):
        return sum(_min_width(child) for child in el.elements)
    return 1


def _emit_pos_token(b: _Builder, mask: int) -> None:
    b.emit(OP_TOKEN, b.pred(PRED_POS, mask))


def _emit_pos_star(b: _Builder, mask: int) -> None:
    top = b.here()
    split = b.emit(OP_SPLIT)
    b.patch_a(split, b.here())
    _emit_pos_token(b, mask)
    b.emit(OP_JMP, top)
    b.patch_b(split, b.here())


def _emit_pos_opt(b: _Builder, mask: int) -> None:
    split = b.emit(OP_SPLIT)
    b.patch_a(split, b.here())
    _emit_pos_token(b, mask)
    b.patch_b(split, b.here())


def _emit_chunk(b: _Builder, cls: str) -> None:
    if cls == "adj":
        _emit_pos_star(b, _ADV)
        _emit_pos_token(b, _ADJ)
    elif cls == "noun":
        _emit_pos_opt(b, _DET)
        _emit_pos_star(b, _NOMINAL)
        _emit_pos_token(b, _NOUNISH)
        top = b.here()
        split = b.emit(OP_SPLIT)
        b.patch_a(split, b.here())
        _emit_pos_token(b, _CCONJ)
        _emit_pos_token(b, _NOMINAL)
        _emit_pos_star(b, _NOMINAL)
        b.emit(OP_JMP, top)
        b.patch_b(split, b.here())
    elif cls == "verb":
        _emit_pos_star(b, _ADV)
        _emit_pos_token(b, _VERBISH)
        _emit_pos_star(b, _ADV)
        _emit_pos_opt(b, _PREPISH)
    elif cls == "pronoun":
        _emit_pos_token(b, _PRON)
    else:
        raise ValueError("unknown chunk class %r" % cls)


def _syn_payload(group_name: str, groups: Mapping) -> frozenset:
    try:
        group = groups[group_name]
    except KeyError:
        raise LexiconBindingError(
            "unresolved synonym group %r (known groups: %s)"
            % (group_name, ", ".join(sorted(groups)) or "none")
        ) from None
    members = getattr(group, "members", group)
    return frozenset((lemma, POS_CODE[pos]) for lemma, pos in members)


def _emit_atom(b: _Builder, el: Element, groups: Mapping) -> None:
    if isinstance(el, Literal):
        b.emit(OP_TOKEN, b.pred(PRED_LIT, frozenset(el.words)))
    elif isinstance(el, PosWildcard):
        b.emit(OP_TOKEN, b.pred(PRED_POS, _mask(el.tag)))
    elif isinstance(el, DepWildcard):
        b.emit(OP_TOKEN, b.pred(PRED_DEP, el.label))
    elif isinstance(el, SynRef):
        b.emit(OP_TOKEN, b.pred(PRED_SYN, _syn_payload(el.group, groups)))
    elif isinstance(el, ChunkRef):
        _emit_chunk(b, el.chunk)
    elif isinstance(el, Capture):
        b.emit(OP_SAVE, 2 * el.index)
        _emit_seq(b, el.elements, groups)
        b.emit(OP_SAVE, 2 * el.index + 1)
    elif isinstance(el, Group):
        _emit_seq(b, el.elements, groups)
    else:
        raise TypeError("not a pattern element: %r" % (el,))


def _emit_element(b: _Builder, el: Element, groups: Mapping) -> None:
    if not el.star:
        _emit_atom(b, el, groups)
        return
    guarded = _min_width(el) == 0
    reg = b.new_reg() if guarded else -1
    top = b.here()
    split = b.emit(OP_SPLIT)
    b.patch_a(split, b.here())
    if guarded:
        b.emit(OP_SETREG, reg)
    _emit_atom(b, el, groups)
    if guarded:
        b.emit(OP_PROGRESS, reg)
    b.emit(OP_JMP, top)
    b.patch_b(split, b.here())


def _emit_seq(b: _Builder, elements, groups: Mapping) -> None:
    for el in elements:
        _emit_element(b, el, groups)


def compile_pattern(ast: PatternAst, groups: Mapping) -> Program:
    """Compile an AST against a lexicon's synonym groups.

    Raises LexiconBindingError before any matching when a SynRef does
    not resolve.
    """
    b = _Builder()
    _emit_seq(b, ast.elements, groups)
    b.emit(OP_MATCH)
    return b.finish(len(ast.captures()))


def compile_record(record: PatternRecord, groups: Mapping) -> CompiledPattern:
    return CompiledPattern(
        id=record.id,
        program=compile_pattern(record.ast, groups),
        capture_classes=capture_class_map(record.ast),
        record=record,
    )
