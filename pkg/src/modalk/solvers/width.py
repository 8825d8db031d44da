"""Satisfiability by dynamic programming over modal-width types.

Diamonds are first rewritten as ``~[]~``. For each level ``i`` the table
row ``A[i]`` records, for every valuation ``P'`` of the letters and every
subset ``S'`` of ``S_i``, whether the conjunction fixing exactly those
letters and exactly those ``S_i`` members true (the type ``F(i, P', S')``)
is satisfiable. Row ``d`` is all true. Row ``i`` is filled from row
``i+1``: the boxes at the top of the ``S_i`` formulas become fresh letters
``Q`` (one per member of ``S_{i+1}``); an assignment to ``P' + Q`` is usable
when the successors it demands can be drawn from satisfiable types of row
``i+1``. Each usable assignment makes the type it evaluates to true.

Table entries are indexed ``P' | S' << v``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .. import kernels
from ..formula import Box, Formula, Var, desugar_diamonds, variables
from ..kripke import KripkeModel
from ..measures import modality_depth, ordered_level_sets
from .result import Budget, BudgetExceeded, Verdict, Witness, finish, unknown, valuation_dict


@dataclass
class WidthTable:
    letters: tuple
    levels: list  # S_0..S_d as ordered lists (of the diamond-free formula)
    rows: list  # rows[i]: bytearray of size 2**(v + |S_i|)
    supports: list = field(default_factory=list)  # rows[i] entry -> Q' that made it true

    def get(self, i: int, p: int, s: int) -> bool:
        return bool(self.rows[i][p | s << len(self.letters)])


def _member_mask(entry: int, v: int, level: list, letter_index: dict) -> int:
    """Which formulas of ``level`` hold in a state of type ``entry``.

    Letters are read from the valuation part, everything else from the
    subset part.
    """
    p, s = entry & ((1 << v) - 1), entry >> v
    mask = 0
    for j, phi in enumerate(level):
        if isinstance(phi, Var):
            bit = p >> letter_index[phi.name] & 1
        else:
            bit = s >> j & 1
        mask |= bit << j
    return mask


class _Filler:
    def __init__(self, letters, budget, stats, keep_supports):
        self.letters = letters
        self.v = len(letters)
        self.letter_index = {n: i for i, n in enumerate(letters)}
        self.budget = budget
        self.stats = stats
        self.keep_supports = keep_supports

    def fill(self, current: list, nxt: list, next_row: bytearray):
        """Row for the formulas ``current`` given the row of ``nxt``.

        Returns ``(row, supports, members)``; ``members`` maps each true
        entry of ``next_row`` to its membership mask over ``nxt``.
        """
        v, q = self.v, len(nxt)
        width = v + len(current)
        if (1 << width) > self.budget.max_cells or (1 << (v + q)) > self.budget.max_cells:
            raise BudgetExceeded(f"row needs 2^{max(width, v + q)} cells")
        self.budget.check_clock()
        members = {
            e: _member_mask(e, v, nxt, self.letter_index)
            for e in range(len(next_row)) if next_row[e]
        }
        ok = kernels.feasible(list(members.values()), q)
        atoms = {Box(phi): v + j for j, phi in enumerate(nxt)}
        prog, roots = kernels.compile_formulas(current, self.letters, atoms)
        table = kernels.prop_table(prog, v + q, roots)
        self.budget.check_clock()
        row = bytearray(1 << width)
        supports = {} if self.keep_supports else None
        vmask = (1 << v) - 1
        for a, truth in enumerate(table):
            qa = a >> v
            if ok[qa]:
                e = (a & vmask) | truth << v
                if not row[e]:
                    row[e] = 1
                    if supports is not None:
                        supports[e] = qa
        self.stats["prop_assignments"] += len(table)
        self.stats["table_cells"] += len(row)
        return row, supports, members


def build_table(f: Formula, budget: Budget | None = None, keep_supports=False, stats=None):
    """Fill the table for ``f`` (diamonds are rewritten first)."""
    budget = budget or Budget()
    if stats is None:
        stats = {"prop_assignments": 0, "table_cells": 0}
    g = desugar_diamonds(f)
    letters = tuple(sorted(variables(g)))
    levels = ordered_level_sets(g)
    d = modality_depth(g)
    levels = levels[: d + 1]
    filler = _Filler(letters, budget, stats, keep_supports)
    rows = [None] * (d + 1)
    supports = [None] * (d + 1)
    rows[d] = bytearray(b"\x01") * (1 << len(letters))
    stats["table_cells"] += len(rows[d])
    for i in range(d - 1, -1, -1):
        rows[i], supports[i], _ = filler.fill(levels[i], levels[i + 1], rows[i + 1])
    return g, WidthTable(letters, levels, rows, supports), filler


def sat_width(f: Formula, budget: Budget | None = None, witness: bool = False):
    """Decide satisfiability; with ``witness=True`` also rebuild a model."""
    started = time.perf_counter()
    budget = (budget or Budget()).start()
    stats = {"solver": "width", "prop_assignments": 0, "table_cells": 0}
    try:
        g, table, filler = build_table(f, budget, keep_supports=witness, stats=stats)
        v = len(table.letters)
        stats.update(v=v, md=len(table.levels) - 1,
                     widths=[len(s) for s in table.levels[:-1]])
        # the input formula itself is handled like a one-formula level above row 0
        top, top_supports, _ = filler.fill([g], table.levels[0], table.rows[0])
    except BudgetExceeded as exc:
        return unknown(stats, str(exc), started)
    stats["candidates"] = stats["prop_assignments"]
    hits = [e for e in range(len(top)) if top[e] and e >> v & 1]
    if not hits:
        return finish(f, Verdict.UNSAT, None, stats, started)
    model = None
    if witness:
        model = _reconstruct(table, filler, hits[0], top_supports)
        stats["witness_states"] = len(model)
    return finish(f, Verdict.SAT, Witness(model, 0) if model else None, stats, started)


def _reconstruct(table: WidthTable, filler: _Filler, top_entry, top_supports) -> KripkeModel:
    """Back out one model from the recorded supporting assignments.

    A state of type ``(i, e)`` gets, for every fresh letter its support sets
    false, one successor of a satisfiable row-``i+1`` type that contains all
    letters set true and misses the one set false.
    """
    v = len(table.letters)
    d = len(table.levels) - 1
    ids, valuation, relation = {}, {}, []
    members_cache = {}

    def members_of(level):
        if level not in members_cache:
            row = table.rows[level]
            members_cache[level] = [
                (e, _member_mask(e, v, table.levels[level], filler.letter_index))
                for e in range(len(row)) if row[e]
            ]
        return members_cache[level]

    def support(level, e):
        return top_supports[e] if level < 0 else table.supports[level][e]

    stack = [(-1, top_entry)]
    ids[(-1, top_entry)] = 0
    while stack:
        level, e = stack.pop()
        me = ids[(level, e)]
        valuation[me] = valuation_dict(table.letters, e & ((1 << v) - 1))
        nxt = level + 1
        if nxt > d:
            continue
        q = len(table.levels[nxt])
        qa = support(level, e)
        for j in range(q):
            if qa >> j & 1:
                continue
            child = next(e2 for e2, m in members_of(nxt) if m & qa == qa and not m >> j & 1)
            key = (nxt, child)
            if key not in ids:
                ids[key] = len(ids)
                stack.append(key)
            relation.append((me, ids[key]))
    return KripkeModel(range(len(ids)), set(relation), valuation)
