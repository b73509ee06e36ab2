# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled matcher VM.

Twin of ``_engine_py`` -- same instruction set, same greedy-leftmost
backtracking, same non-overlap rule.  Keep the two in lock step: the
test suite cross-checks them on every fixture.
"""

from cpython cimport array
import array

from ..corpus import POS_CODE
from . import program as _prog

ENGINE_NAME = "cython"

cdef int OP_TOKEN = _prog.OP_TOKEN
cdef int OP_SPLIT = _prog.OP_SPLIT
cdef int OP_JMP = _prog.OP_JMP
cdef int OP_SAVE = _prog.OP_SAVE
cdef int OP_SETREG = _prog.OP_SETREG
cdef int OP_PROGRESS = _prog.OP_PROGRESS
cdef int OP_MATCH = _prog.OP_MATCH
cdef int PRED_LIT = _prog.PRED_LIT
cdef int PRED_POS = _prog.PRED_POS
cdef int PRED_DEP = _prog.PRED_DEP
cdef int PRED_SYN = _prog.PRED_SYN
cdef int NOUN_CODE = POS_CODE["NOUN"]
cdef int PROPN_CODE = POS_CODE["PROPN"]

cdef array.array _INT_TEMPLATE = array.array("i", [])


cdef inline bint _pred_ok(int kind, object payload, int i, int n,
                          tuple low, tuple lemma, int[::1] pos, tuple dep):
    cdef object d
    cdef long long mask
    if kind == PRED_LIT:
        return low[i] in payload
    if kind == PRED_POS:
        mask = payload
        return (mask >> pos[i]) & 1
    if kind == PRED_SYN:
        return (lemma[i], pos[i]) in payload or (low[i], pos[i]) in payload
    # PRED_DEP; unparsed corpora fall back to "nominal right before a NOUN"
    # for the compound label only
    d = dep[i]
    if d is not None:
        return d == payload
    if payload == "compound":
        return (pos[i] == NOUN_CODE or pos[i] == PROPN_CODE) and i + 1 < n and pos[i + 1] == NOUN_CODE
    return False


def find_matches(object program, low, lemma, pos, dep):
    """All greedy-leftmost non-overlapping matches in one sentence.

    Returns (start, end, slots) triples in scan order.
    """
    cdef int[::1] ops = program.ops
    cdef int[::1] arg_a = program.arg_a
    cdef int[::1] arg_b = program.arg_b
    cdef int n_slots = program.n_slots
    cdef int n_regs = program.n_regs
    cdef int state = n_slots + n_regs

    cdef tuple low_t = tuple(low)
    cdef tuple lemma_t = tuple(lemma)
    cdef tuple dep_t = tuple(dep)
    cdef array.array pos_arr = array.array("i", pos)
    cdef int[::1] pos_v = pos_arr
    cdef int n = len(low_t)

    preds = program.preds
    cdef array.array pred_kind_arr = array.array("i", [p[0] for p in preds])
    cdef int[::1] pred_kind = pred_kind_arr
    payloads = [p[1] for p in preds]

    # working capture slots + loop registers, snapshotted on every SPLIT
    cdef array.array work_arr = array.clone(_INT_TEMPLATE, state if state > 0 else 1, False)
    cdef int[::1] work = work_arr

    cdef int cap = 64
    cdef array.array st_pc_arr = array.clone(_INT_TEMPLATE, cap, False)
    cdef array.array st_cur_arr = array.clone(_INT_TEMPLATE, cap, False)
    cdef array.array st_snap_arr = array.clone(
        _INT_TEMPLATE, cap * (state if state > 0 else 1), False)
    cdef int[::1] st_pc = st_pc_arr
    cdef int[::1] st_cur = st_cur_arr
    cdef int[::1] st_snap = st_snap_arr

    out = []
    cdef int start = 0
    cdef int pc, cur, depth, op, a, i
    cdef bint matched, ok
    while start < n:
        pc = 0
        cur = start
        depth = 0
        for i in range(state):
            work[i] = -1
        matched = False
        while True:
            op = ops[pc]
            a = arg_a[pc]
            if op == OP_TOKEN:
                ok = cur < n and _pred_ok(
                    pred_kind[a], payloads[a], cur, n, low_t, lemma_t, pos_v, dep_t)
                if ok:
                    cur += 1
                    pc += 1
                    continue
            elif op == OP_SPLIT:
                if depth == cap:
                    cap = cap * 2
                    array.resize_smart(st_pc_arr, cap)
                    array.resize_smart(st_cur_arr, cap)
                    array.resize_smart(st_snap_arr, cap * (state if state > 0 else 1))
                    st_pc = st_pc_arr
                    st_cur = st_cur_arr
                    st_snap = st_snap_arr
                st_pc[depth] = arg_b[pc]
                st_cur[depth] = cur
                for i in range(state):
                    st_snap[depth * state + i] = work[i]
                depth += 1
                pc = a
                continue
            elif op == OP_JMP:
                pc = a
                continue
            elif op == OP_SAVE:
                work[a] = cur
                pc += 1
                continue
            elif op == OP_SETREG:
                work[n_slots + a] = cur
                pc += 1
                continue
            elif op == OP_PROGRESS:
                if cur != work[n_slots + a]:
                    pc += 1
                    continue
            else:  # OP_MATCH
                matched = True
                break
            # opcode fell through: this thread failed, backtrack
            if depth == 0:
                break
            depth -= 1
            pc = st_pc[depth]
            cur = st_cur[depth]
            for i in range(state):
                work[i] = st_snap[depth * state + i]
        if matched and cur > start:
            out.append((start, cur, tuple([work[i] for i in range(n_slots)])))
            start = cur
        else:
            start += 1
    return out
