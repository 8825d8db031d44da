"""Structural parameters of modal formulas.

All measures are syntactic. The diamond and box dimensions are only defined
on negation normal form; :func:`measure_all` converts first and records it.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .formula import (
    And, Bot, Box, Dia, Formula, Not, Or, Top, Var, is_nnf, subformulas,
    to_nnf, variables,
)


class ResourceError(RuntimeError):
    """A computation would exceed its configured resource budget."""


class NotNNFError(ValueError):
    """A dimension measure was applied to a formula outside NNF."""


DEFAULT_BIT_BUDGET = 1 << 20


def modality_depth(f: Formula) -> int:
    memo = {}
    for n in subformulas(f):
        if isinstance(n, (Box, Dia)):
            memo[n] = 1 + memo[n.child]
        elif n.children:
            memo[n] = max(memo[c] for c in n.children)
        else:
            memo[n] = 0
    return memo[f]


def _dimension(f: Formula, counted, summed) -> int:
    if not is_nnf(f):
        raise NotNNFError("formula is not in negation normal form")
    memo = {}
    for n in subformulas(f):
        if isinstance(n, (Var, Top, Bot, Not)):
            memo[n] = 0
        elif isinstance(n, counted):
            memo[n] = 1 + memo[n.child]
        elif isinstance(n, (Box, Dia)):
            memo[n] = memo[n.child]
        elif isinstance(n, summed):
            memo[n] = memo[n.left] + memo[n.right]
        else:
            memo[n] = max(memo[n.left], memo[n.right])
    return memo[f]


def diamond_dimension(f: Formula) -> int:
    """Diamonds needed to satisfy ``f``: sums over ``&``, max over ``|``."""
    return _dimension(f, Dia, And)


def box_dimension(f: Formula) -> int:
    """Dual of :func:`diamond_dimension`: sums over ``|``, max over ``&``."""
    return _dimension(f, Box, Or)


def _ordered_s(f: Formula) -> list:
    """Children of the outermost modal operators of ``f``, first occurrence order."""
    out, seen = [], set()
    stack = [f]
    while stack:
        n = stack.pop()
        if isinstance(n, (Box, Dia)):
            if n.child not in seen:
                seen.add(n.child)
                out.append(n.child)
        else:
            stack.extend(reversed(n.children))
    return out


def depth1_set(f: Formula) -> frozenset:
    """The formulas sitting directly under a modal operator at modal depth one."""
    return frozenset(_ordered_s(f))


def ordered_level_sets(f: Formula) -> list:
    """Like :func:`level_sets` but each level is a deterministic list."""
    levels = [_ordered_s(f)]
    while levels[-1]:
        nxt, seen = [], set()
        for psi in levels[-1]:
            for g in _ordered_s(psi):
                if g not in seen:
                    seen.add(g)
                    nxt.append(g)
        levels.append(nxt)
    # pad so that the list always reaches index md(f)
    md = modality_depth(f)
    while len(levels) < md + 1:
        levels.append([])
    return levels


def level_sets(f: Formula) -> list:
    """``[S_0, ..., S_md]`` where ``S_0 = s(f)`` and ``S_{i+1}`` unions ``s`` over ``S_i``."""
    return [frozenset(level) for level in ordered_level_sets(f)]


def modal_width(f: Formula):
    """Return ``(mw, widths)`` with ``widths[i] = |S_i|`` for ``i < md``."""
    md = modality_depth(f)
    widths = [len(s) for s in ordered_level_sets(f)[:md]]
    return (max(widths) if widths else 0), widths


@dataclass(frozen=True)
class PropResult:
    prop: Formula
    fresh_map: dict = field(default_factory=dict)


def prop_translate(f: Formula, prefix: str = "q") -> PropResult:
    """Replace each boxed subformula by a fresh letter.

    Structurally identical boxes share their letter. Fresh names are
    ``q1, q2, ...`` in left-to-right order, skipping names already used in ``f``.
    """
    taken = variables(f)
    fresh: dict = {}  # boxed child -> Var
    fresh_map: dict = {}
    counter = 0

    def letter_for(child):
        nonlocal counter
        v = fresh.get(child)
        if v is None:
            counter += 1
            while f"{prefix}{counter}" in taken:
                counter += 1
            v = Var(f"{prefix}{counter}")
            fresh[child] = v
            fresh_map[v.name] = child
        return v

    def go(g):
        if isinstance(g, Box):
            return letter_for(g.child)
        if isinstance(g, Dia):
            raise ValueError("prop_translate needs a diamond-free formula; "
                             "apply desugar_diamonds first")
        if isinstance(g, Not):
            return Not(go(g.child))
        if isinstance(g, (And, Or)):
            left = go(g.left)
            return type(g)(left, go(g.right))
        return g

    return PropResult(go(f), fresh_map)


def f_v(v: int, d: int, bit_budget: int = DEFAULT_BIT_BUDGET) -> int:
    """Upper bound on the number of ``d``-types over ``v`` letters."""
    if v < 0 or d < 0:
        raise ValueError("v and d must be non-negative")
    if v > bit_budget:
        raise ResourceError(f"f_v({v}, 0) needs more than {bit_budget} bits")
    value = 1 << v
    for _ in range(d):
        exponent = value + v
        if exponent > bit_budget:
            raise ResourceError(
                f"f_v({v}, {d}) needs an exponent of {exponent}, over the {bit_budget}-bit budget"
            )
        value = 1 << exponent
    return value


def tow(h: int, bit_budget: int = DEFAULT_BIT_BUDGET) -> int:
    if h < 0:
        raise ValueError("h must be non-negative")
    value = 0
    for _ in range(h):
        if value > bit_budget:
            raise ResourceError(f"tow({h}) exceeds the {bit_budget}-bit budget")
        value = 1 << value
    return value


def min_tower_height(n: int) -> int:
    """Smallest ``h`` with ``tow(h) >= n``."""
    h, t = 0, 0
    while t < n:
        h += 1
        t = 1 << t
    return h


@dataclass
class MeasureReport:
    v: int
    md: int
    dd: int
    dbox: int
    mw: int
    widths: list
    nnf_applied: bool = False

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("nnf_applied")
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def measure_all(f: Formula) -> MeasureReport:
    """Every measure for ``f``; dimensions are taken on ``to_nnf(f)``."""
    nnf = to_nnf(f)
    mw, widths = modal_width(f)
    return MeasureReport(
        v=len(variables(f)),
        md=modality_depth(f),
        dd=diamond_dimension(nnf),
        dbox=box_dimension(nnf),
        mw=mw,
        widths=widths,
        nnf_applied=nnf != f,
    )
