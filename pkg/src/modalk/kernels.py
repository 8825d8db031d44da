"""Backend selection for the hot loops.

The compiled core (``_ckernels``) is used when it was built and the input
fits its 64-bit masks; everything else goes to ``_pykernels``. Set
``MODALK_PURE_PYTHON=1`` to force the fallback for the whole process.
"""

from __future__ import annotations

import os
from array import array
from dataclasses import dataclass

from . import _pykernels as py
from ._pykernels import (  # noqa: F401
    OP_AND, OP_BOT, OP_BOX, OP_DIA, OP_NOT, OP_OR, OP_TOP, OP_VAR,
)
from .formula import And, Bot, Box, Dia, Formula, Not, Or, Top, Var, subformulas

try:
    if os.environ.get("MODALK_PURE_PYTHON"):
        raise ImportError("pure python requested")
    from . import _ckernels as c
except ImportError:  # pragma: no cover - depends on the build
    c = None

BACKEND = "cython" if c is not None else "python"


def available_backends():
    return ["python"] + (["cython"] if c is not None else [])


@dataclass(frozen=True)
class Program:
    """A formula flattened into topologically ordered opcodes.

    Structurally equal subformulas share one slot, so ``len(ops)`` is the
    number of distinct subformulas.
    """

    ops: array
    a0: array
    a1: array
    nodes: tuple  # Formula per slot
    letters: tuple  # letter name per VAR index
    root: int

    def __len__(self):
        return len(self.ops)

    def index(self, f: Formula) -> int:
        return self._slots[f]

    @property
    def _slots(self):
        cache = self.__dict__.get("_slot_cache")
        if cache is None:
            cache = {n: i for i, n in enumerate(self.nodes)}
            object.__setattr__(self, "_slot_cache", cache)
        return cache


def compile_formula(f: Formula, letters=None, atoms=None) -> Program:
    """Flatten ``f``.

    ``letters`` fixes the VAR numbering (defaults to sorted names).
    ``atoms`` maps whole subformulas to VAR indices; the prop translation
    of the width solver uses it to turn boxed formulas into fresh letters.
    """
    prog, _ = compile_formulas([f], letters, atoms)
    return prog


def compile_formulas(fs, letters=None, atoms=None):
    """Flatten several formulas into one program; returns ``(program, root slots)``.

    ``program.root`` is the slot of the last formula.
    """
    fs = list(fs)
    nodes = []
    slot = {}
    if letters is None:
        letters = tuple(sorted({n.name for f in fs for n in subformulas(f)
                                if isinstance(n, Var)}))
    letter_index = {name: i for i, name in enumerate(letters)}
    ops, a0, a1 = array("i"), array("i"), array("i")

    def emit(node, op, x=0, y=0):
        slot[node] = len(nodes)
        nodes.append(node)
        ops.append(op)
        a0.append(x)
        a1.append(y)

    stack = [(f, False) for f in reversed(fs)]
    while stack:
        node, expanded = stack.pop()
        if node in slot:
            continue
        if atoms is not None and node in atoms:
            emit(node, OP_VAR, atoms[node])
            continue
        if not expanded and node.children:
            stack.append((node, True))
            for ch in reversed(node.children):
                if ch not in slot:
                    stack.append((ch, False))
            continue
        if isinstance(node, Var):
            emit(node, OP_VAR, letter_index[node.name])
        elif isinstance(node, Top):
            emit(node, OP_TOP)
        elif isinstance(node, Bot):
            emit(node, OP_BOT)
        elif isinstance(node, Not):
            emit(node, OP_NOT, slot[node.child])
        elif isinstance(node, And):
            emit(node, OP_AND, slot[node.left], slot[node.right])
        elif isinstance(node, Or):
            emit(node, OP_OR, slot[node.left], slot[node.right])
        elif isinstance(node, Box):
            emit(node, OP_BOX, slot[node.child])
        elif isinstance(node, Dia):
            emit(node, OP_DIA, slot[node.child])
        else:  # pragma: no cover
            raise TypeError(type(node).__name__)
    roots = [slot[f] for f in fs]
    return Program(ops, a0, a1, tuple(nodes), tuple(letters), roots[-1]), roots


_MAX_LIMIT = (1 << 63) - 1


def _pick(fits: bool, backend):
    if backend == "python" or c is None or not fits:
        return py
    return c


def _fits(values, bits=64):
    return all(v >> bits == 0 for v in values)


def eval_masks(prog: Program, val_masks, succ, backend=None):
    fits = len(succ) <= 64
    return _pick(fits, backend).eval_masks(prog.ops, prog.a0, prog.a1, val_masks, succ)


def combos(prog: Program, nvars, child_sigs, max_children, target=-1,
           dedupe=False, limit=1 << 62, backend=None):
    fits = len(prog) <= 64 and nvars < 63
    return _pick(fits, backend).combos(
        prog.ops, prog.a0, prog.a1, nvars, child_sigs, max_children,
        target, dedupe, min(limit, _MAX_LIMIT),
    )


def state_signature(prog: Program, val, all_mask, any_mask, backend=None):
    fits = len(prog) <= 64 and _fits((val, all_mask, any_mask))
    return _pick(fits, backend).state_signature(
        prog.ops, prog.a0, prog.a1, val, all_mask, any_mask
    )


def brute_search(prog: Program, nvars, n, limit, backend=None):
    fits = n * n <= 63 and n * nvars <= 63
    return _pick(fits, backend).brute_search(
        prog.ops, prog.a0, prog.a1, nvars, n, prog.root, min(limit, _MAX_LIMIT)
    )


def prop_table(prog: Program, nvars, roots, backend=None):
    fits = len(roots) <= 64 and nvars <= 40
    return _pick(fits, backend).prop_table(prog.ops, prog.a0, prog.a1, nvars, roots)


def feasible(members, nq, backend=None):
    fits = nq <= 40
    return _pick(fits, backend).feasible(members, nq)
