"""Bounded brute-force model search, the sanity oracle for the real solvers."""

from __future__ import annotations

import time

from .. import kernels
from ..formula import Formula
from ..kripke import KripkeModel
from .result import Budget, BudgetExceeded, Verdict, Witness, finish, unknown


def sat_brute(f: Formula, max_states: int = 4, budget: Budget | None = None,
              complete_bound: int | None = None):
    """Try every model with ``1..max_states`` states, state 0 being the root.

    A witness finder: without ``complete_bound`` an exhausted search reports
    UNKNOWN. If the caller knows that every satisfiable input has a model of
    at most ``complete_bound`` states and ``max_states`` reaches it, an
    exhausted search is an UNSAT proof (``stats["complete"]`` is then true).
    """
    if max_states < 1:
        raise ValueError("max_states must be at least 1")
    started = time.perf_counter()
    budget = (budget or Budget()).start()
    prog = kernels.compile_formula(f)
    nvars = len(prog.letters)
    stats = {"solver": "brute", "candidates": 0, "max_states": max_states,
             "complete": False}
    try:
        for n in range(1, max_states + 1):
            budget.check_clock()
            left = budget.max_candidates - stats["candidates"]
            hit, examined, complete = kernels.brute_search(prog, nvars, n, left)
            stats["candidates"] += examined
            if hit is not None:
                succ, val_masks = hit
                true_sets = [
                    {prog.letters[j] for j in range(nvars) if val_masks[j] >> s & 1}
                    for s in range(n)
                ]
                model = KripkeModel.from_masks(succ, true_sets)
                stats["states"] = n
                return finish(f, Verdict.SAT, Witness(model, 0), stats, started)
            if not complete:
                return unknown(stats, "candidate budget exhausted", started)
    except BudgetExceeded as exc:
        return unknown(stats, str(exc), started)
    if complete_bound is not None and max_states >= complete_bound:
        stats["complete"] = True
        return finish(f, Verdict.UNSAT, None, stats, started)
    return unknown(stats, f"no model with at most {max_states} states", started)
