"""Finite Kripke models, the model checker and the model JSON format."""

from __future__ import annotations

import json
from typing import Iterable, Mapping

from . import kernels
from .formula import Formula


class ModelError(ValueError):
    """Malformed model or model JSON."""


class KripkeModel:
    """States are the dense integers ``0..n-1``.

    ``states`` keeps the order in which the states were declared (used when
    serialising). Valuation entries that are absent read as false.
    """

    __slots__ = ("states", "relation", "valuation", "_succ")

    def __init__(self, states: Iterable[int], relation: Iterable = (),
                 valuation: Mapping[int, Mapping[str, bool]] | None = None):
        states = tuple(int(s) for s in states)
        if len(set(states)) != len(states):
            dup = next(s for s in states if states.count(s) > 1)
            raise ModelError(f"duplicate state id {dup}")
        if set(states) != set(range(len(states))):
            raise ModelError("state ids must be the dense range 0..n-1")
        n = len(states)
        rel = set()
        for edge in relation:
            a, b = (int(x) for x in edge)
            if not (0 <= a < n and 0 <= b < n):
                raise ModelError(f"dangling edge [{a}, {b}]")
            rel.add((a, b))
        val = {}
        for s, entry in (valuation or {}).items():
            if not 0 <= s < n:
                raise ModelError(f"valuation for unknown state {s}")
            val[s] = {str(k): bool(v) for k, v in entry.items()}
        succ = [0] * n
        for a, b in rel:
            succ[a] |= 1 << b
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "relation", frozenset(rel))
        object.__setattr__(self, "valuation", tuple(val.get(s, {}) for s in range(n)))
        object.__setattr__(self, "_succ", tuple(succ))

    def __setattr__(self, name, value):
        raise AttributeError("KripkeModel is immutable")

    @classmethod
    def from_masks(cls, succ, true_sets):
        """Build from per-state successor bitmasks and per-state sets of true letters."""
        n = len(succ)
        rel = [(s, t) for s in range(n) for t in range(n) if succ[s] >> t & 1]
        val = {s: {name: True for name in sorted(true_sets[s])} for s in range(n)}
        return cls(range(n), rel, val)

    def __len__(self):
        return len(self.states)

    def __eq__(self, other):
        if not isinstance(other, KripkeModel):
            return NotImplemented
        return (self.states == other.states and self.relation == other.relation
                and self.valuation == other.valuation)

    __hash__ = None

    def __repr__(self):
        return f"KripkeModel(states={len(self)}, edges={len(self.relation)})"

    def successors(self, s: int) -> list:
        m = self._succ[s]
        return [t for t in range(len(self.states)) if m >> t & 1]

    @property
    def successor_masks(self) -> tuple:
        return self._succ

    def holds(self, s: int, letter: str) -> bool:
        return self.valuation[s].get(letter, False)

    def letter_masks(self, letters) -> list:
        out = []
        for name in letters:
            m = 0
            for s, val in enumerate(self.valuation):
                if val.get(name, False):
                    m |= 1 << s
            out.append(m)
        return out

    def reachable(self, root: int) -> list:
        """States reachable from ``root`` in breadth-first order, root first."""
        order, seen = [root], {root}
        i = 0
        while i < len(order):
            for t in self.successors(order[i]):
                if t not in seen:
                    seen.add(t)
                    order.append(t)
            i += 1
        return order

    def restrict(self, root: int):
        """The submodel generated by ``root``, renumbered so the root is state 0."""
        order = self.reachable(root)
        new = {old: i for i, old in enumerate(order)}
        rel = [(new[a], new[b]) for a, b in self.relation if a in new]
        val = {new[s]: self.valuation[s] for s in order}
        return KripkeModel(range(len(order)), rel, val)

    def to_dict(self) -> dict:
        return {
            "states": [
                {"id": s, "valuation": {k: self.valuation[s][k]
                                        for k in sorted(self.valuation[s])}}
                for s in self.states
            ],
            "relation": [list(e) for e in sorted(self.relation)],
        }


def model_check(m: KripkeModel, s: int, f: Formula, stats: dict | None = None) -> bool:
    """Does ``f`` hold at state ``s`` of ``m``?

    Every subformula is evaluated once over the whole state set (bitsets),
    so each (subformula, state) pair is visited at most once. When ``stats``
    is given, ``stats["visits"]`` is increased by the number of pairs.
    """
    if not 0 <= s < len(m):
        raise ModelError(f"unknown state id {s}")
    return bool(check_all(m, f, stats) >> s & 1)


def check_all(m: KripkeModel, f: Formula, stats: dict | None = None) -> int:
    """Bitmask of the states of ``m`` where ``f`` holds."""
    prog = kernels.compile_formula(f)
    masks = kernels.eval_masks(prog, m.letter_masks(prog.letters), m.successor_masks)
    if stats is not None:
        stats["visits"] = stats.get("visits", 0) + len(prog) * len(m)
    return masks[prog.root]


def _load_obj(obj) -> KripkeModel:
    if not isinstance(obj, dict) or set(obj) - {"states", "relation"} or "states" not in obj:
        raise ModelError("model JSON must be an object with 'states' and 'relation'")
    states, val = [], {}
    if not isinstance(obj["states"], list):
        raise ModelError("'states' must be a list")
    for entry in obj["states"]:
        if not isinstance(entry, dict) or "id" not in entry:
            raise ModelError("each state needs an 'id'")
        sid = entry["id"]
        if not isinstance(sid, int) or isinstance(sid, bool) or sid < 0:
            raise ModelError(f"bad state id {sid!r}")
        valuation = entry.get("valuation", {})
        if not isinstance(valuation, dict) or not all(
            isinstance(v, bool) for v in valuation.values()
        ):
            raise ModelError(f"valuation of state {sid} must map letters to booleans")
        if sid in val:
            raise ModelError(f"duplicate state id {sid}")
        states.append(sid)
        val[sid] = valuation
    relation = obj.get("relation", [])
    if not isinstance(relation, list) or not all(
        isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)
        for e in relation
    ):
        raise ModelError("'relation' must be a list of [from, to] pairs")
    return KripkeModel(states, relation, val)


def load_model(data) -> KripkeModel:
    """Parse model JSON (bytes or str)."""
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ModelError(f"invalid JSON: {exc}") from exc
    return _load_obj(obj)


def save_model(m: KripkeModel) -> bytes:
    """Canonical JSON: declared state order, sorted letters, sorted edges."""
    return json.dumps(m.to_dict(), separators=(",", ":")).encode()


def model_from_dict(obj) -> KripkeModel:
    return _load_obj(obj)
