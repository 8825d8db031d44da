"""Satisfiability for NNF formulas of small diamond dimension.

A satisfiable formula of diamond dimension ``k`` has a model shaped as a
subtree of the skeleton ``T_k``: the root has ``k`` children, each of those
``k-1`` children, and so on. The solver searches all such subtrees with all
valuations, bottom-up. Two subtrees whose roots agree on every subformula
are interchangeable, so each depth keeps one representative per signature;
this prunes the search without losing any candidate root signature.
"""

from __future__ import annotations

import time

from .. import kernels
from ..formula import Formula, is_nnf
from ..kripke import KripkeModel
from ..measures import NotNNFError, diamond_dimension
from .result import Budget, BudgetExceeded, Verdict, Witness, finish, unknown, valuation_dict


def skeleton_size(k: int) -> int:
    """Number of states of ``T_k``: ``|T_0| = 1``, ``|T_k| = 1 + k*|T_{k-1}|``."""
    size = 1
    for j in range(1, k + 1):
        size = 1 + j * size
    return size


def sat_diamond(f: Formula, budget: Budget | None = None):
    if not is_nnf(f):
        raise NotNNFError("sat_diamond expects a formula in negation normal form")
    started = time.perf_counter()
    budget = (budget or Budget()).start()
    prog = kernels.compile_formula(f)
    v = len(prog.letters)
    k = diamond_dimension(f)
    states = skeleton_size(k)
    stats = {
        "solver": "diamond", "v": v, "dd": k, "skeleton_states": states,
        "search_space_log2": (states - 1) + v * states, "candidates": 0,
    }
    # levels[t] holds the distinct subtree types available at depth t
    levels = {}
    try:
        below = []
        for depth in range(k, 0, -1):
            budget.check_clock()
            left = budget.max_candidates - stats["candidates"]
            entries, examined, complete = kernels.combos(
                prog, v, below, k - depth, dedupe=True, limit=left
            )
            stats["candidates"] += examined
            if not complete:
                return unknown(stats, "candidate budget exhausted", started)
            levels[depth] = entries
            below = [e[0] for e in entries]
        budget.check_clock()
        left = budget.max_candidates - stats["candidates"]
        hit, examined, complete = kernels.combos(
            prog, v, below, k, target=prog.root, limit=left
        )
        stats["candidates"] += examined
    except BudgetExceeded as exc:
        return unknown(stats, str(exc), started)
    if hit:
        levels[0] = hit
        model = _build_tree(prog.letters, levels, hit[0])
        stats["witness_states"] = len(model)
        return finish(f, Verdict.SAT, Witness(model, 0), stats, started)
    if not complete:
        return unknown(stats, "candidate budget exhausted", started)
    return finish(f, Verdict.UNSAT, None, stats, started)


def _build_tree(letters, levels, root_entry) -> KripkeModel:
    """Unfold the chosen representatives into a tree (no shared states)."""
    valuation, relation = {}, []
    stack = [(0, root_entry, None)]
    count = 0
    while stack:
        depth, (sig, val, children), parent = stack.pop()
        me = count
        count += 1
        valuation[me] = valuation_dict(letters, val)
        if parent is not None:
            relation.append((parent, me))
        for c in reversed(children):
            stack.append((depth + 1, levels[depth + 1][c], me))
    return KripkeModel(range(count), relation, valuation)
