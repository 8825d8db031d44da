"""Satisfiability by enumerating types level by level (parameters: letters and modal depth).

Level 0 has one state per valuation. A state of level ``i+1`` is a
valuation together with a set of level-``i`` successors. A formula of modal
depth ``d`` is satisfiable iff it holds at some root built from a valuation
and a subset of level ``d-1``. Instead of re-running the model checker per
root, every state carries its signature (the truth value of every
subformula), and a root's signature follows from its valuation and the
AND/OR of its successors' signatures.
"""

from __future__ import annotations

import time

from .. import kernels
from ..formula import Formula
from ..kripke import KripkeModel
from ..measures import ResourceError, f_v, modality_depth
from .result import Budget, BudgetExceeded, Verdict, Witness, finish, unknown, valuation_dict


def layer_sizes(v: int, d: int) -> list:
    """State counts of levels ``0..d-1``."""
    return [f_v(v, i) for i in range(d)]


def layered_model(letters, d: int):
    """Materialise levels ``0..d-1`` as a :class:`KripkeModel`.

    Returns ``(model, levels)`` where ``levels[i]`` lists the state ids of
    level ``i``. Only sensible for tiny parameters; used by tests.
    """
    letters = tuple(letters)
    v = len(letters)
    valuation, relation, levels = {}, [], []
    next_id = 0
    for i in range(d):
        level = []
        below = levels[-1] if levels else []
        subsets = range(1 << len(below)) if i > 0 else [0]
        for subset in subsets:
            for val in range(1 << v):
                sid = next_id
                next_id += 1
                valuation[sid] = valuation_dict(letters, val)
                relation.extend((sid, below[j]) for j in range(len(below)) if subset >> j & 1)
                level.append(sid)
        levels.append(level)
    return KripkeModel(range(next_id), relation, valuation), levels


def sat_depth(f: Formula, budget: Budget | None = None) -> "SatResult":
    started = time.perf_counter()
    budget = (budget or Budget()).start()
    prog = kernels.compile_formula(f)
    v = len(prog.letters)
    d = modality_depth(f)
    stats = {"solver": "depth", "v": v, "md": d, "candidates": 0}
    try:
        sizes = layer_sizes(v, d)
        stats["layer_sizes"] = sizes
        stats["root_candidates"] = f_v(v, d)
    except ResourceError as exc:
        return unknown(stats, str(exc), started)
    if sum(sizes) > budget.max_states:
        return unknown(stats, f"layered model needs {sum(sizes)} states", started)
    if stats["root_candidates"] > budget.max_candidates:
        return unknown(stats, "root candidates exceed the candidate budget", started)

    layers = []  # per level: list of (sig, val, children)
    try:
        for i in range(d):
            budget.check_clock()
            below = [e[0] for e in layers[-1]] if layers else []
            entries, examined, _ = kernels.combos(prog, v, below, len(below))
            layers.append(entries)
        budget.check_clock()
        top = [e[0] for e in layers[-1]] if layers else []
        hit, examined, complete = kernels.combos(
            prog, v, top, len(top), target=prog.root, limit=budget.max_candidates
        )
        stats["candidates"] = examined
    except BudgetExceeded as exc:
        return unknown(stats, str(exc), started)
    if not complete:
        return unknown(stats, "candidate budget exhausted", started)
    if not hit:
        return finish(f, Verdict.UNSAT, None, stats, started)

    witness = _extract(prog.letters, layers, hit[0])
    stats["witness_states"] = len(witness)
    return finish(f, Verdict.SAT, Witness(witness, 0), stats, started)


def _extract(letters, layers, root_entry) -> KripkeModel:
    """The submodel generated by the chosen root, root numbered 0."""
    ids = {}
    valuation, relation = {}, []
    order = [(len(layers), None, root_entry)]
    ids[(len(layers), None)] = 0
    valuation[0] = valuation_dict(letters, root_entry[1])
    i = 0
    while i < len(order):
        level, _, (sig, val, children) = order[i]
        me = ids[(level, order[i][1])]
        for c in children:
            key = (level - 1, c)
            if key not in ids:
                ids[key] = len(ids)
                child = layers[level - 1][c]
                valuation[ids[key]] = valuation_dict(letters, child[1])
                order.append((level - 1, c, child))
            relation.append((me, ids[key]))
        i += 1
    return KripkeModel(range(len(ids)), relation, valuation)
