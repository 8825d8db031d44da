"""Modal formula syntax trees, the text parser/printer and negation normal form.

Formulas are immutable. Each node caches its hash so that structurally shared
trees (such as the numeral formulas built by the reduction) can be compared
and used as dict keys without re-walking the whole tree.
"""

from __future__ import annotations

import re
from typing import Iterator


class Formula:
    """Base class of all formula nodes."""

    __slots__ = ("_hash",)
    children: tuple = ()

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __delattr__(self, name):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, Formula):
            return NotImplemented
        # iterative so that very deep formulas compare without recursion
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a is b:
                continue
            if type(a) is not type(b) or a._hash != b._hash:
                return False
            if not a.children:
                if a._key() != b._key():
                    return False
                continue
            stack.extend(zip(a.children, b.children))
        return True

    def __ne__(self, other):
        return not self == other

    def _key(self):
        return self.children

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(map(repr, self._key()))})"

    def __str__(self):
        return print_formula(self)

    # operator sugar, handy in tests and the reduction builder
    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)


class Var(Formula):
    __slots__ = ("name",)

    def __init__(self, name: str):
        if not isinstance(name, str) or not _IDENT.fullmatch(name) or name in _KEYWORDS:
            raise ValueError(f"invalid variable name {name!r}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_hash", hash(("Var", name)))

    def _key(self):
        return (self.name,)


class _Constant(Formula):
    __slots__ = ()

    def __init__(self):
        object.__setattr__(self, "_hash", hash(type(self).__name__))

    def _key(self):
        return ()

    def __repr__(self):
        return f"{type(self).__name__}()"


class Top(_Constant):
    __slots__ = ()


class Bot(_Constant):
    __slots__ = ()


class _Unary(Formula):
    __slots__ = ("child",)

    def __init__(self, child: Formula):
        if not isinstance(child, Formula):
            raise TypeError(f"expected Formula, got {type(child).__name__}")
        object.__setattr__(self, "child", child)
        object.__setattr__(self, "_hash", hash((type(self).__name__, child._hash)))

    @property
    def children(self):
        return (self.child,)


class _Binary(Formula):
    __slots__ = ("left", "right")

    def __init__(self, left: Formula, right: Formula):
        if not isinstance(left, Formula) or not isinstance(right, Formula):
            raise TypeError("And/Or operands must be formulas")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(
            self, "_hash", hash((type(self).__name__, left._hash, right._hash))
        )

    @property
    def children(self):
        return (self.left, self.right)


class Not(_Unary):
    __slots__ = ()


class Box(_Unary):
    __slots__ = ()


class Dia(_Unary):
    __slots__ = ()


class And(_Binary):
    __slots__ = ()


class Or(_Binary):
    __slots__ = ()


TOP = Top()
BOT = Bot()

MODAL = (Box, Dia)


def conjoin(parts, empty: Formula = TOP) -> Formula:
    """Left-associated conjunction of ``parts`` (``empty`` if there are none)."""
    result = None
    for p in parts:
        result = p if result is None else And(result, p)
    return empty if result is None else result


def disjoin(parts, empty: Formula = BOT) -> Formula:
    result = None
    for p in parts:
        result = p if result is None else Or(result, p)
    return empty if result is None else result


def implies(a: Formula, b: Formula) -> Formula:
    return Or(Not(a), b)


def iff(a: Formula, b: Formula) -> Formula:
    return And(Or(Not(a), b), Or(Not(b), a))


# ---------------------------------------------------------------------------
# traversal helpers

def subformulas(f: Formula) -> Iterator[Formula]:
    """Distinct subformulas in post-order (children before parents)."""
    seen = set()
    stack = [(f, False)]
    while stack:
        node, expanded = stack.pop()
        if node in seen:
            continue
        if expanded or not node.children:
            seen.add(node)
            yield node
            continue
        stack.append((node, True))
        for c in reversed(node.children):
            if c not in seen:
                stack.append((c, False))


def size(f: Formula) -> int:
    """Number of nodes of the tree (shared subtrees counted once per occurrence)."""
    memo = {}
    for node in subformulas(f):
        memo[node] = 1 + sum(memo[c] for c in node.children)
    return memo[f]


def variables(f: Formula) -> frozenset:
    """Names of the propositional letters occurring in ``f``."""
    return frozenset(n.name for n in subformulas(f) if isinstance(n, Var))


def is_nnf(f: Formula) -> bool:
    return all(
        not isinstance(n, Not) or isinstance(n.child, Var) for n in subformulas(f)
    )


def is_propositional(f: Formula) -> bool:
    return not any(isinstance(n, MODAL) for n in subformulas(f))


# ---------------------------------------------------------------------------
# transformations

def to_nnf(f: Formula) -> Formula:
    """Push negations down to the letters.

    Uses De Morgan, double negation, the modal dualities and the constant
    rules; the result is equivalent to ``f`` in K.
    """
    memo: dict = {}

    def go(g: Formula, positive: bool) -> Formula:
        key = (g, positive)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(g, Var):
            out = g if positive else Not(g)
        elif isinstance(g, Top):
            out = TOP if positive else BOT
        elif isinstance(g, Bot):
            out = BOT if positive else TOP
        elif isinstance(g, Not):
            out = go(g.child, not positive)
        elif isinstance(g, And):
            l, r = go(g.left, positive), go(g.right, positive)
            out = And(l, r) if positive else Or(l, r)
        elif isinstance(g, Or):
            l, r = go(g.left, positive), go(g.right, positive)
            out = Or(l, r) if positive else And(l, r)
        elif isinstance(g, Box):
            c = go(g.child, positive)
            out = Box(c) if positive else Dia(c)
        elif isinstance(g, Dia):
            c = go(g.child, positive)
            out = Dia(c) if positive else Box(c)
        else:  # pragma: no cover
            raise TypeError(type(g).__name__)
        memo[key] = out
        return out

    return go(f, True)


def desugar_diamonds(f: Formula) -> Formula:
    """Rewrite every ``<> g`` as ``~ [] ~ g``."""
    memo: dict = {}
    for node in subformulas(f):
        if isinstance(node, Dia):
            memo[node] = Not(Box(Not(memo[node.child])))
        elif isinstance(node, (Var, Top, Bot)):
            memo[node] = node
        else:
            memo[node] = type(node)(*(memo[c] for c in node.children))
    return memo[f]


# ---------------------------------------------------------------------------
# concrete syntax

class ParseError(ValueError):
    """Raised on malformed formula text; ``offset`` is the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


_IDENT = re.compile(r"[a-z][a-zA-Z0-9_]*")
_KEYWORDS = {"true", "false"}
_TOKEN = re.compile(
    r"\s*(?:(?P<op><->|->|\[\]|<>|[~&|()])|(?P<ident>[a-z][a-zA-Z0-9_]*))"
)


def _tokenize(text: str):
    pos = 0
    tokens = []
    data = text.encode("utf-8")
    # offsets are reported in bytes; map char index -> byte index lazily
    def byte_offset(i):
        return len(text[:i].encode("utf-8"))

    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unknown token {text[pos]!r}", byte_offset(pos))
        start = m.start("op") if m.group("op") else m.start("ident")
        tokens.append((m.group("op") or m.group("ident"), byte_offset(start)))
        pos = m.end()
    tokens.append(("<eof>", len(data)))
    return tokens


# binary operators: precedence, right associative
_BINARY = {"<->": (1, False), "->": (2, True), "|": (3, False), "&": (4, False)}
_PREFIX = {"~": Not, "[]": Box, "<>": Dia}


def _combine(op, a, b):
    if op == "&":
        return And(a, b)
    if op == "|":
        return Or(a, b)
    if op == "->":
        return implies(a, b)
    return iff(a, b)


class _Parser:
    """Operator-precedence parser with explicit stacks, so neither long
    prefix chains nor deep parenthesis nesting hit the recursion limit."""

    def __init__(self, text: str):
        self.tokens = _tokenize(text)

    def formula(self):
        values, ops = [], []  # ops holds "(", prefix and binary tokens

        def reduce_binary():
            op = ops.pop()
            b = values.pop()
            values.append(_combine(op, values.pop(), b))

        def close_prefixes():
            while ops and ops[-1] in _PREFIX:
                values.append(_PREFIX[ops.pop()](values.pop()))

        opens = []  # offsets of unmatched "("
        want_operand = True
        for tok, off in self.tokens:
            if want_operand:
                if tok in _PREFIX or tok == "(":
                    ops.append(tok)
                    if tok == "(":
                        opens.append(off)
                    continue
                if tok == "true":
                    values.append(TOP)
                elif tok == "false":
                    values.append(BOT)
                elif tok == "<eof>":
                    raise ParseError("unexpected end of input", off)
                elif tok == ")":
                    raise ParseError("unbalanced parentheses: unexpected ')'", off)
                elif _IDENT.fullmatch(tok):
                    values.append(Var(tok))
                else:
                    raise ParseError(f"unexpected token {tok!r}", off)
                close_prefixes()
                want_operand = False
            elif tok in _BINARY:
                prec, right = _BINARY[tok]
                while ops and ops[-1] in _BINARY:
                    top = _BINARY[ops[-1]][0]
                    if top > prec or (top == prec and not right):
                        reduce_binary()
                    else:
                        break
                ops.append(tok)
                want_operand = True
            elif tok == ")":
                while ops and ops[-1] != "(":
                    reduce_binary()
                if not ops:
                    raise ParseError("unbalanced parentheses: unexpected ')'", off)
                ops.pop()
                opens.pop()
                close_prefixes()
            elif tok == "<eof>":
                while ops and ops[-1] != "(":
                    reduce_binary()
                if ops:
                    raise ParseError("unbalanced parentheses: missing ')'", off)
            else:
                raise ParseError(f"unexpected token {tok!r}", off)
        return values[0]


def parse(text: str) -> Formula:
    """Parse the ASCII formula syntax.

    ``->`` (right associative) and ``<->`` are expanded on the fly into
    ``~A | B`` and ``(~A | B) & (~B | A)``.
    """
    return _Parser(text).formula()


def print_formula(f: Formula) -> str:
    """Render ``f`` so that ``parse(print_formula(f)) == f``.

    Binary connectives and negations are always parenthesised.
    """
    memo: dict = {}
    for node in subformulas(f):
        if isinstance(node, Var):
            s = node.name
        elif isinstance(node, Top):
            s = "true"
        elif isinstance(node, Bot):
            s = "false"
        elif isinstance(node, Not):
            s = f"(~ {memo[node.child]})"
        elif isinstance(node, Box):
            s = f"[] {memo[node.child]}"
        elif isinstance(node, Dia):
            s = f"<> {memo[node.child]}"
        elif isinstance(node, And):
            s = f"({memo[node.left]} & {memo[node.right]})"
        else:
            s = f"({memo[node.left]} | {memo[node.right]})"
        memo[node] = s
    return memo[f]
