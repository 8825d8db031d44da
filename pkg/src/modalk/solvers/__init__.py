"""Satisfiability and validity procedures for K."""

from __future__ import annotations

import enum
import time

from ..formula import Formula, Not, to_nnf
from ..measures import box_dimension
from .brute import sat_brute
from .depth import layered_model, sat_depth
from .diamond import sat_diamond, skeleton_size
from .result import Budget, SatResult, Verdict, Witness
from .width import WidthTable, build_table, sat_width

__all__ = [
    "Algo", "Budget", "SatResult", "Verdict", "Witness", "WidthTable",
    "build_table", "layered_model", "sat_brute", "sat_depth", "sat_diamond",
    "sat_width", "skeleton_size", "solve", "valid",
]


class Algo(str, enum.Enum):
    WIDTH = "width"
    DEPTH = "depth"
    DIAMOND = "diamond"
    BRUTE = "brute"


def solve(f: Formula, algo="width", budget: Budget | None = None,
          max_states: int = 4, witness: bool = False) -> SatResult:
    """Dispatch to one satisfiability engine. ``diamond`` converts to NNF first."""
    algo = Algo(algo)
    if algo is Algo.WIDTH:
        return sat_width(f, budget, witness=witness)
    if algo is Algo.DEPTH:
        return sat_depth(f, budget)
    if algo is Algo.DIAMOND:
        return sat_diamond(to_nnf(f), budget)
    return sat_brute(f, max_states, budget)


def valid(f: Formula, algo="width", budget: Budget | None = None,
          max_states: int = 4, witness: bool = False) -> SatResult:
    """``f`` is valid iff ``~f`` is unsatisfiable.

    An INVALID verdict carries the countermodel found for ``~f``. With the
    diamond engine the governing parameter is the box dimension of ``f``.
    """
    started = time.perf_counter()
    res = solve(Not(f), algo, budget, max_states, witness)
    stats = dict(res.stats)
    if Algo(algo) is Algo.DIAMOND:
        stats["dbox"] = box_dimension(to_nnf(f))
    verdict = {
        Verdict.UNSAT: Verdict.VALID,
        Verdict.SAT: Verdict.INVALID,
    }.get(res.verdict, Verdict.UNKNOWN)
    stats["seconds"] = round(time.perf_counter() - started, 6)
    return SatResult(verdict, res.witness, stats)
