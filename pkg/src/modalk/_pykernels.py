"""Pure-Python versions of the hot loops.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and the same enumeration order, so the two backends produce identical
results and identical counters. Python ints are unbounded, so this module
also serves inputs that do not fit the 64-bit masks of the compiled core.

Programs are flat arrays ``ops, a0, a1`` in topological order (children
before parents). Opcodes are the ``OP_*`` constants below.
"""

from itertools import combinations

OP_VAR, OP_TOP, OP_BOT, OP_NOT, OP_AND, OP_OR, OP_BOX, OP_DIA = range(8)


def eval_masks(ops, a0, a1, val_masks, succ):
    """Bit-parallel model checking: node ``k`` -> mask of states satisfying it.

    ``val_masks[j]`` is the set of states where letter ``j`` holds and
    ``succ[s]`` the successor set of state ``s``.
    """
    n = len(succ)
    full = (1 << n) - 1
    out = [0] * len(ops)
    for k in range(len(ops)):
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
                if not succ[s] & ~c:
                    m |= 1 << s
        else:
            c = out[a0[k]]
            m = 0
            for s in range(n):
                if succ[s] & c:
                    m |= 1 << s
        out[k] = m
    return out


def state_signature(ops, a0, a1, val, all_mask, any_mask):
    """Truth of every node at one state, given the AND/OR of its successors' signatures."""
    sig = 0
    for k in range(len(ops)):
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


def combos(ops, a0, a1, nvars, child_sigs, max_children, target, dedupe, limit):
    """Enumerate states built from a valuation and a set of child states.

    Children are chosen as combinations of indices into ``child_sigs`` of
    size ``0..max_children`` (size first, then lexicographic); valuations
    run innermost. With ``target >= 0`` the search stops at the first state
    whose signature has bit ``target`` set. Otherwise all states are
    returned, or only the first per distinct signature when ``dedupe``.

    Returns ``(entries, examined, complete)``; entries are
    ``(sig, val, children)`` tuples.
    """
    full = (1 << len(ops)) - 1
    nval = 1 << nvars
    m = len(child_sigs)
    skip = dedupe or target >= 0
    seen_pairs = set()
    seen_sigs = set()
    entries = []
    examined = 0
    for r in range(min(max_children, m) + 1):
        for comb in combinations(range(m), r):
            all_mask, any_mask = full, 0
            for c in comb:
                all_mask &= child_sigs[c]
                any_mask |= child_sigs[c]
            if skip:
                pair = (all_mask, any_mask)
                if pair in seen_pairs:
                    continue
                seen_pairs.add(pair)
            for val in range(nval):
                if examined >= limit:
                    return entries, examined, False
                examined += 1
                sig = state_signature(ops, a0, a1, val, all_mask, any_mask)
                if target >= 0:
                    if (sig >> target) & 1:
                        return [(sig, val, comb)], examined, True
                elif dedupe:
                    if sig not in seen_sigs:
                        seen_sigs.add(sig)
                        entries.append((sig, val, comb))
                else:
                    entries.append((sig, val, comb))
    return entries, examined, True


def brute_search(ops, a0, a1, nvars, n, root, limit):
    """Scan all ``n``-state models (relation outer, valuation inner) for one
    where node ``root`` holds at state 0.

    Returns ``(hit, examined, complete)`` where ``hit`` is
    ``(succ, val_masks)`` or ``None``.
    """
    row = (1 << n) - 1
    nrel = 1 << (n * n)
    nval = 1 << (n * nvars)
    examined = 0
    for rel in range(nrel):
        succ = [(rel >> (s * n)) & row for s in range(n)]
        for vals in range(nval):
            if examined >= limit:
                return None, examined, False
            examined += 1
            val_masks = [(vals >> (j * n)) & row for j in range(nvars)]
            if eval_masks(ops, a0, a1, val_masks, succ)[root] & 1:
                return (tuple(succ), tuple(val_masks)), examined, True
    return None, examined, True


def _letter_pattern(j, nvars):
    """Mask over all ``2**nvars`` assignments selecting those with bit ``j`` set."""
    half = 1 << j
    pattern = ((1 << half) - 1) << half
    period = half << 1
    total = 1 << nvars
    while period < total:
        pattern |= pattern << period
        period <<= 1
    return pattern


def prop_table(ops, a0, a1, nvars, roots):
    """For every assignment ``a`` of ``nvars`` letters, the mask of ``roots`` true under ``a``.

    The program must be propositional (no BOX/DIA).
    """
    total = 1 << nvars
    full = (1 << total) - 1
    node = [0] * len(ops)
    for k in range(len(ops)):
        op = ops[k]
        if op == OP_VAR:
            m = _letter_pattern(a0[k], nvars)
        elif op == OP_TOP:
            m = full
        elif op == OP_BOT:
            m = 0
        elif op == OP_NOT:
            m = full & ~node[a0[k]]
        elif op == OP_AND:
            m = node[a0[k]] & node[a1[k]]
        elif op == OP_OR:
            m = node[a0[k]] | node[a1[k]]
        else:
            raise ValueError("prop_table needs a propositional program")
        node[k] = m
    out = [0] * total
    for j, r in enumerate(roots):
        m = node[r]
        bit = 1 << j
        while m:
            low = m & -m
            out[low.bit_length() - 1] |= bit
            m ^= low
    return out


def feasible(members, nq):
    """Successor feasibility for every box assignment ``Q`` over ``nq`` letters.

    ``members`` are the membership masks of the satisfiable types one level
    down. ``Q`` is feasible when, among the types containing all of ``Q``,
    every letter outside ``Q`` is missing from at least one of them.
    """
    size = 1 << nq
    full = size - 1
    meet = [full] * size
    for m in members:
        meet[m] &= m
    for b in range(nq):
        bit = 1 << b
        for q in range(size):
            if not q & bit:
                meet[q] &= meet[q | bit]
    out = bytearray(size)
    for q in range(size):
        out[q] = 1 if not meet[q] & (full & ~q) else 0
    return out
