"""Pure-Python matcher VM.

Reference implementation of the backtracking engine; the Cython twin in
``_engine_cy.pyx`` mirrors it instruction for instruction.  Keep the two
in lock step: the test suite cross-checks them on every fixture.

The VM scans start positions left to right.  At each start it runs the
program depth-first with an explicit backtracking stack; SPLIT pushes
its second branch, so the consuming branch wins and the first complete
match is the greedy one.  Zero-width matches are discarded.  After a
match, scanning resumes at its end (matches never overlap).
"""

from __future__ import annotations

from ..corpus import POS_CODE
from .program import (
    OP_JMP,
    OP_MATCH,
    OP_PROGRESS,
    OP_SAVE,
    OP_SETREG,
    OP_SPLIT,
    OP_TOKEN,
    PRED_DEP,
    PRED_LIT,
    PRED_POS,
    PRED_SYN,
    Program,
)

_NOUN = POS_CODE["NOUN"]
_PROPN = POS_CODE["PROPN"]

ENGINE_NAME = "python"


def _pred_ok(kind, payload, i, n, low, lemma, pos, dep):
    if kind == PRED_LIT:
        return low[i] in payload
    if kind == PRED_POS:
        return (payload >> pos[i]) & 1
    if kind == PRED_SYN:
        return (lemma[i], pos[i]) in payload or (low[i], pos[i]) in payload
    # PRED_DEP; unparsed corpora fall back to "nominal right before a NOUN"
    # for the compound label only
    d = dep[i]
    if d is not None:
        return d == payload
    if payload == "compound":
        return (pos[i] == _NOUN or pos[i] == _PROPN) and i + 1 < n and pos[i + 1] == _NOUN
    return False


def _match_at(program: Program, start, low, lemma, pos, dep):
    ops = program.ops
    arg_a = program.arg_a
    arg_b = program.arg_b
    preds = program.preds
    n = len(low)

    pc = 0
    cur = start
    slots = [-1] * program.n_slots
    regs = [-1] * program.n_regs
    stack = []

    while True:
        op = ops[pc]
        failed = False
        if op == OP_TOKEN:
            kind, payload = preds[arg_a[pc]]
            if cur < n and _pred_ok(kind, payload, cur, n, low, lemma, pos, dep):
                cur += 1
                pc += 1
            else:
                failed = True
        elif op == OP_SPLIT:
            stack.append((arg_b[pc], cur, tuple(slots), tuple(regs)))
            pc = arg_a[pc]
        elif op == OP_JMP:
            pc = arg_a[pc]
        elif op == OP_SAVE:
            slots[arg_a[pc]] = cur
            pc += 1
        elif op == OP_SETREG:
            regs[arg_a[pc]] = cur
            pc += 1
        elif op == OP_PROGRESS:
            if cur == regs[arg_a[pc]]:
                failed = True
            else:
                pc += 1
        else:  # OP_MATCH
            return (start, cur, tuple(slots))
        if failed:
            if not stack:
                return None
            pc, cur, saved_slots, saved_regs = stack.pop()
            slots = list(saved_slots)
            regs = list(saved_regs)


def find_matches(program: Program, low, lemma, pos, dep):
    """All greedy-leftmost non-overlapping matches in one sentence.

    Returns (start, end, slots) triples in scan order.
    """
    out = []
    n = len(low)
    start = 0
    while start < n:
        hit = _match_at(program, start, low, lemma, pos, dep)
        if hit is None or hit[1] == start:
            start += 1
        else:
            out.append(hit)
            start = hit[1]
    return out
