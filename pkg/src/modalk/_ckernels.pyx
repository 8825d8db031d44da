# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the loops in ``_pykernels``.

Masks are 64-bit, so callers (see ``kernels``) only route inputs here when
state counts, program sizes and letter counts fit. Enumeration order and
counters match the Python versions exactly.
"""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

cdef enum:
    OP_VAR = 0
    OP_TOP = 1
    OP_BOT = 2
    OP_NOT = 3
    OP_AND = 4
    OP_OR = 5
    OP_BOX = 6
    OP_DIA = 7


cdef inline uint64_t _low_mask(int n) nogil:
    if n >= 64:
        return <uint64_t>0xFFFFFFFFFFFFFFFF
    return ((<uint64_t>1) << n) - 1


cdef void _eval(const int[:] ops, const int[:] a0, const int[:] a1,
                uint64_t* val_masks, uint64_t* succ, int n, uint64_t* out) nogil:
    cdef uint64_t full = _low_mask(n)
    cdef Py_ssize_t k, nops = ops.shape[0]
    cdef int s, op
    cdef uint64_t m, c
    for k in range(nops):
        op = ops[k]
        if op == OP_VAR:
            m = val_masks[a0[k]]
        elif op == OP_TOP:
            m = full
        elif op == OP_BOT:
            m = 0
        elif op == OP_NOT:
            m = full & ~out[a0[k]]
        elif op == OP_AND:
            m = out[a0[k]] & out[a1[k]]
        elif op == OP_OR:
            m = out[a0[k]] | out[a1[k]]
        elif op == OP_BOX:
            c = out[a0[k]]
            m = 0
            for s in range(n):
                if (succ[s] & ~c) == 0:
                    m |= (<uint64_t>1) << s
        else:
            c = out[a0[k]]
            m = 0
            for s in range(n):
                if (succ[s] & c) != 0:
                    m |= (<uint64_t>1) << s
        out[k] = m


def eval_masks(const int[:] ops, const int[:] a0, const int[:] a1, val_masks, succ):
    cdef int n = len(succ)
    cdef int nv = len(val_masks)
    cdef Py_ssize_t nops = ops.shape[0]
    cdef uint64_t* vm = <uint64_t*>malloc((nv + 1) * sizeof(uint64_t))
    cdef uint64_t* sc = <uint64_t*>malloc((n + 1) * sizeof(uint64_t))
    cdef uint64_t* out = <uint64_t*>malloc((nops + 1) * sizeof(uint64_t))
    cdef int i
    try:
        for i in range(nv):
            vm[i] = val_masks[i]
        for i in range(n):
            sc[i] = succ[i]
        _eval(ops, a0, a1, vm, sc, n, out)
        return [out[i] for i in range(nops)]
    finally:
        free(vm)
        free(sc)
        free(out)


cdef inline uint64_t _signature(const int[:] ops, const int[:] a0, const int[:] a1,
                                uint64_t val, uint64_t all_mask, uint64_t any_mask) nogil:
    cdef uint64_t sig = 0, bit
    cdef Py_ssize_t k, nops = ops.shape[0]
    cdef int op
    for k in range(nops):
        op = ops[k]
        if op == OP_VAR:
            bit = (val >> a0[k]) & 1
        elif op == OP_TOP:
            bit = 1
        elif op == OP_BOT:
            bit = 0
        elif op == OP_NOT:
            bit = 1 - ((sig >> a0[k]) & 1)
        elif op == OP_AND:
            bit = (sig >> a0[k]) & (sig >> a1[k]) & 1
        elif op == OP_OR:
            bit = ((sig >> a0[k]) | (sig >> a1[k])) & 1
        elif op == OP_BOX:
            bit = (all_mask >> a0[k]) & 1
        else:
            bit = (any_mask >> a0[k]) & 1
        sig |= bit << k
    return sig


def state_signature(const int[:] ops, const int[:] a0, const int[:] a1,
                    uint64_t val, uint64_t all_mask, uint64_t any_mask):
    return _signature(ops, a0, a1, val, all_mask, any_mask)


def combos(const int[:] ops, const int[:] a0, const int[:] a1, int nvars,
           child_sigs, int max_children, int target, bint dedupe, uint64_t limit):
    cdef Py_ssize_t nops = ops.shape[0]
    cdef uint64_t full = _low_mask(<int>nops)
    cdef uint64_t nval = (<uint64_t>1) << nvars
    cdef int m = len(child_sigs)
    cdef bint skip = dedupe or target >= 0
    cdef uint64_t* sigs = <uint64_t*>malloc((m + 1) * sizeof(uint64_t))
    cdef int* idx = <int*>malloc((m + 1) * sizeof(int))
    cdef uint64_t examined = 0, val, sig, all_mask, any_mask
    cdef int r, i, j, rmax
    cdef set seen_pairs = set()
    cdef set seen_sigs = set()
    cdef list entries = []
    try:
        for i in range(m):
            sigs[i] = child_sigs[i]
        rmax = max_children if max_children < m else m
        for r in range(rmax + 1):
            for i in range(r):
                idx[i] = i
            while True:
                all_mask = full
                any_mask = 0
                for i in range(r):
                    all_mask &= sigs[idx[i]]
                    any_mask |= sigs[idx[i]]
                pair = None
                if skip:
                    pair = ((<object>all_mask) << 64) | any_mask
                if pair is None or pair not in seen_pairs:
                    if pair is not None:
                        seen_pairs.add(pair)
                    for val in range(nval):
                        if examined >= limit:
                            return entries, examined, False
                        examined += 1
                        sig = _signature(ops, a0, a1, val, all_mask, any_mask)
                        if target >= 0:
                            if (sig >> target) & 1:
                                return [(sig, val, tuple([idx[j] for j in range(r)]))], examined, True
                        elif dedupe:
                            if sig not in seen_sigs:
                                seen_sigs.add(sig)
                                entries.append((sig, val, tuple([idx[j] for j in range(r)])))
                        else:
                            entries.append((sig, val, tuple([idx[j] for j in range(r)])))
                # next combination in lexicographic order
                i = r - 1
                while i >= 0 and idx[i] == m - r + i:
                    i -= 1
                if i < 0:
                    break
                idx[i] += 1
                for j in range(i + 1, r):
                    idx[j] = idx[j - 1] + 1
        return entries, examined, True
    finally:
        free(sigs)
        free(idx)


def brute_search(const int[:] ops, const int[:] a0, const int[:] a1,
                 int nvars, int n, int root, uint64_t limit):
    cdef Py_ssize_t nops = ops.shape[0]
    cdef uint64_t row = _low_mask(n)
    cdef uint64_t nrel = (<uint64_t>1) << (n * n)
    cdef uint64_t nval = (<uint64_t>1) << (n * nvars)
    cdef uint64_t rel, vals, examined = 0
    cdef uint64_t* succ = <uint64_t*>malloc((n + 1) * sizeof(uint64_t))
    cdef uint64_t* vm = <uint64_t*>malloc((nvars + 1) * sizeof(uint64_t))
    cdef uint64_t* out = <uint64_t*>malloc((nops + 1) * sizeof(uint64_t))
    cdef int s, j
    cdef bint found = False
    cdef bint exhausted = False
    try:
        with nogil:
            rel = 0
            while rel < nrel:
                for s in range(n):
                    succ[s] = (rel >> (s * n)) & row
                vals = 0
                while vals < nval:
                    if examined >= limit:
                        exhausted = True
                        break
                    examined += 1
                    for j in range(nvars):
                        vm[j] = (vals >> (j * n)) & row
                    _eval(ops, a0, a1, vm, succ, n, out)
                    if out[root] & 1:
                        found = True
                        break
                    vals += 1
                if found or exhausted:
                    break
                rel += 1
        if found:
            return (tuple([succ[s] for s in range(n)]),
                    tuple([vm[j] for j in range(nvars)])), examined, True
        return None, examined, not exhausted
    finally:
        free(succ)
        free(vm)
        free(out)


def prop_table(const int[:] ops, const int[:] a0, const int[:] a1, int nvars, roots):
    cdef Py_ssize_t nops = ops.shape[0]
    cdef uint64_t total = (<uint64_t>1) << nvars
    cdef int nroots = len(roots)
    cdef int* rt = <int*>malloc((nroots + 1) * sizeof(int))
    cdef unsigned char* node = <unsigned char*>malloc((nops + 1) * sizeof(unsigned char))
    cdef uint64_t* res = <uint64_t*>malloc(total * sizeof(uint64_t))
    cdef uint64_t a, mask
    cdef Py_ssize_t k
    cdef int op, j
    cdef unsigned char b
    try:
        for k in range(nops):
            if ops[k] == OP_BOX or ops[k] == OP_DIA:
                raise ValueError("prop_table needs a propositional program")
        for j in range(nroots):
            rt[j] = roots[j]
        with nogil:
            for a in range(total):
                for k in range(nops):
                    op = ops[k]
                    if op == OP_VAR:
                        b = (a >> a0[k]) & 1
                    elif op == OP_TOP:
                        b = 1
                    elif op == OP_BOT:
                        b = 0
                    elif op == OP_NOT:
                        b = 1 - node[a0[k]]
                    elif op == OP_AND:
                        b = node[a0[k]] & node[a1[k]]
                    else:
                        b = node[a0[k]] | node[a1[k]]
                    node[k] = b
                mask = 0
                for j in range(nroots):
                    if node[rt[j]]:
                        mask |= (<uint64_t>1) << j
                res[a] = mask
        return [res[a] for a in range(total)]
    finally:
        free(rt)
        free(node)
        free(res)


def feasible(members, int nq):
    cdef uint64_t size = (<uint64_t>1) << nq
    cdef uint64_t full = size - 1
    cdef uint64_t* meet = <uint64_t*>malloc(size * sizeof(uint64_t))
    cdef uint64_t q, bit, mm
    cdef int b
    cdef bytearray out = bytearray(size)
    cdef unsigned char[:] ov = out
    try:
        for q in range(size):
            meet[q] = full
        for m in members:
            mm = m
            meet[mm] &= mm
        with nogil:
            for b in range(nq):
                bit = (<uint64_t>1) << b
                for q in range(size):
                    if (q & bit) == 0:
                        meet[q] &= meet[q | bit]
            for q in range(size):
                ov[q] = 1 if (meet[q] & (full & ~q)) == 0 else 0
        return out
    finally:
        free(meet)
