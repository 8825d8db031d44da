"""Verdicts, witnesses, budgets and the result record shared by all solvers."""

from __future__ import annotations

import enum
import json
import time
from dataclasses import dataclass, field

from ..formula import Formula
from ..kripke import KripkeModel, model_check


class Verdict(str, enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    UNKNOWN = "UNKNOWN"
    VALID = "VALID"
    INVALID = "INVALID"


@dataclass(frozen=True)
class Witness:
    model: KripkeModel
    root: int = 0

    def to_dict(self) -> dict:
        d = self.model.to_dict()
        d["root"] = self.root
        return d


@dataclass
class SatResult:
    verdict: Verdict
    witness: Witness | None = None
    stats: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "witness": self.witness.to_dict() if self.witness else None,
            "stats": self.stats,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


class BudgetExceeded(Exception):
    """Internal signal: a solver ran out of its budget."""


@dataclass
class Budget:
    """Resource limits. ``seconds=None`` disables the wall clock."""

    max_candidates: int = 1 << 34
    max_states: int = 10 ** 6
    max_cells: int = 1 << 24
    seconds: float | None = 300.0
    _deadline: float | None = field(default=None, repr=False, compare=False)

    def start(self) -> "Budget":
        b = Budget(self.max_candidates, self.max_states, self.max_cells, self.seconds)
        if self.seconds is not None:
            b._deadline = time.monotonic() + self.seconds
        return b

    def check_clock(self):
        if self._deadline is not None and time.monotonic() > self._deadline:
            raise BudgetExceeded("wall-clock budget exhausted")


def finish(f: Formula, verdict: Verdict, witness: Witness | None, stats: dict,
           started: float) -> SatResult:
    """Stamp timing and refuse to hand out a witness that does not check."""
    if witness is not None and verdict is Verdict.SAT:
        if not model_check(witness.model, witness.root, f):
            raise AssertionError("solver produced a witness that fails model checking")
    stats["seconds"] = round(time.perf_counter() - started, 6)
    return SatResult(verdict, witness, stats)


def unknown(stats: dict, reason: str, started: float) -> SatResult:
    stats["reason"] = reason
    stats["seconds"] = round(time.perf_counter() - started, 6)
    return SatResult(Verdict.UNKNOWN, None, stats)


def valuation_dict(letters, val: int) -> dict:
    return {name: True for j, name in enumerate(letters) if val >> j & 1}
