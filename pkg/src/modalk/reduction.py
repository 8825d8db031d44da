"""Encoding CNF satisfiability into K with a single letter and small modal depth.

Variable indices are written as variable-free "numeral" formulas
(``v_0 = []false``, ``v_n`` = conjunction of ``<> v_i`` over the set bits
``i`` of ``n``), so the modal depth grows like the inverse tower function
of the number of variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .formula import (
    BOT, Box, Dia, Formula, Not, Var, conjoin, disjoin, iff, implies,
)
from .kripke import KripkeModel
from .measures import min_tower_height

Y = Var("y")


class DimacsError(ValueError):
    pass


@dataclass(frozen=True)
class CnfInstance:
    num_vars: int
    clauses: tuple  # tuple of tuples of non-zero ints (sign = polarity)

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("a CNF instance needs at least one variable")
        for c in self.clauses:
            if not c:
                raise ValueError("empty clause")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range 1..{self.num_vars}")

    def satisfied_by(self, assignment) -> bool:
        return all(any(assignment[abs(l)] == (l > 0) for l in c) for c in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfInstance:
    header = None
    clauses, current = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            m = re.fullmatch(r"p\s+cnf\s+(\d+)\s+(\d+)", line)
            if m is None or header is not None:
                raise DimacsError(f"line {lineno}: bad or repeated header {line!r}")
            header = (int(m.group(1)), int(m.group(2)))
            continue
        if header is None:
            raise DimacsError(f"line {lineno}: clause before the 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                if not current:
                    raise DimacsError(f"line {lineno}: empty clause")
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > header[0]:
                raise DimacsError(f"line {lineno}: literal {lit} out of range 1..{header[0]}")
            else:
                current.append(lit)
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        raise DimacsError("last clause is missing its terminating 0")
    if len(clauses) != header[1]:
        raise DimacsError(f"header declares {header[1]} clauses, found {len(clauses)}")
    try:
        return CnfInstance(header[0], tuple(clauses))
    except ValueError as exc:
        raise DimacsError(str(exc)) from None


def bits(n: int) -> list:
    return [i for i in range(n.bit_length()) if n >> i & 1]


@lru_cache(maxsize=None)
def numeral(n: int) -> Formula:
    """``v_0 = []false``; otherwise ``<> v_i`` for the set bits ``i`` of ``n``,
    highest bit first, conjoined left to right."""
    if n < 0:
        raise ValueError("numerals are non-negative")
    if n == 0:
        return Box(BOT)
    return conjoin(Dia(numeral(i)) for i in reversed(bits(n)))


def encode_literal(i: int, negated: bool) -> Formula:
    if i < 1:
        raise ValueError("variable indices start at 1")
    vi, v0 = numeral(i), numeral(0)
    if negated:
        return conjoin([Dia(vi), Dia(v0), Box(disjoin([vi, v0]))])
    return conjoin([Dia(vi), Box(vi)])


def encode_clause(clause) -> Formula:
    clause = list(clause)
    if not clause:
        raise ValueError("cannot encode an empty clause")
    lits = [encode_literal(abs(l), l < 0) for l in clause]
    return conjoin([Dia(L) for L in lits] + [Box(disjoin(lits))])


def encode_structure(cnf: CnfInstance) -> Formula:
    """The clause part: one ``<> C(c)`` conjunct per clause."""
    return conjoin(Dia(encode_clause(c)) for c in cnf.clauses)


def selector() -> Formula:
    """Literal states pick ``y`` for positive and ``~y`` for negative literals."""
    dv0 = Dia(numeral(0))
    body = conjoin([implies(dv0, Box(Not(Y))), implies(Not(dv0), Box(Y))])
    return Box(Dia(body))


def consistency(n: int) -> Formula:
    """Each variable's numeral state at distance three carries one value of ``y``."""
    def three(g):
        return Dia(Dia(Dia(g)))

    return conjoin(
        iff(three(conjoin([Y, numeral(i)])), Not(three(conjoin([Not(Y), numeral(i)]))))
        for i in range(1, n + 1)
    )


def encode(cnf: CnfInstance) -> Formula:
    return conjoin([encode_structure(cnf), selector(), consistency(cnf.num_vars)])


def depth_bound(n: int) -> tuple:
    """``(h, 4 + h)`` with ``h`` the least height whose tower reaches ``n``."""
    h = min_tower_height(n)
    return h, 4 + h


def brute_prop(cnf: CnfInstance, max_vars: int = 24):
    """First satisfying assignment in lexicographic order (False before True,
    ``x1`` most significant), or ``None``."""
    if cnf.num_vars > max_vars:
        raise ValueError(f"{cnf.num_vars} variables exceeds the brute-force limit {max_vars}")
    for values in product((False, True), repeat=cnf.num_vars):
        assignment = dict(zip(range(1, cnf.num_vars + 1), values))
        if cnf.satisfied_by(assignment):
            return assignment
    return None


@dataclass
class ReductionModel:
    model: KripkeModel
    root: int
    numeral_states: dict  # i -> state where v_i was built
    literal_states: dict  # (i, negated) -> state
    clause_states: list


def numeral_structure(n: int):
    """Shared structure for ``v_0..v_n``: state ``i`` has edges to the states of its set bits."""
    relation = [(k, i) for k in range(n + 1) for i in bits(k)]
    return KripkeModel(range(n + 1), relation, {}), {i: i for i in range(n + 1)}


def witness_model(cnf: CnfInstance, assignment) -> ReductionModel:
    """Build the intended model for ``encode(cnf)`` from a satisfying assignment.

    States ``0..n`` realise the numerals; each variable gets a positive
    literal state (edge to its numeral) and a negative one (edges to its
    numeral and to ``v_0``); each clause state points at its literal
    states and the root points at every clause state. A variable that occurs
    in no clause gets an extra unit-clause state for its true literal. ``y``
    holds exactly at the numeral states of the variables set true.

    For ``n >= 3`` the result can fail the encoding: state 3 also satisfies
    ``v_1`` and ``v_2``, so the consistency conjuncts need ``x1 = x2 = x3``.
    """
    n = cnf.num_vars
    if set(assignment) != set(range(1, n + 1)):
        raise ValueError("assignment must cover variables 1..n")
    if not cnf.satisfied_by(assignment):
        raise ValueError("assignment does not satisfy the CNF")
    relation = [(k, i) for k in range(n + 1) for i in bits(k)]
    next_id = n + 1
    literal_states = {}
    for i in range(1, n + 1):
        literal_states[(i, False)] = next_id
        relation.append((next_id, i))
        literal_states[(i, True)] = next_id + 1
        relation += [(next_id + 1, i), (next_id + 1, 0)]
        next_id += 2
    clause_states = []
    for c in cnf.clauses:
        clause_states.append(next_id)
        relation += [(next_id, literal_states[(abs(l), l < 0)]) for l in c]
        next_id += 1
    # a variable missing from every clause would leave its numeral state out
    # of reach at distance three; a unit-clause state for its true literal
    # brings it back without disturbing the selector
    used = {abs(l) for c in cnf.clauses for l in c}
    for i in range(1, n + 1):
        if i not in used:
            clause_states.append(next_id)
            relation.append((next_id, literal_states[(i, not assignment[i])]))
            next_id += 1
    root = next_id
    relation += [(root, s) for s in clause_states]
    valuation = {i: {"y": True} for i in range(1, n + 1) if assignment[i]}
    model = KripkeModel(range(root + 1), relation, valuation)
    return ReductionModel(model, root, {i: i for i in range(n + 1)},
                          literal_states, clause_states)
